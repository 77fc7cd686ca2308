#pragma once

// Exact lattice-point enumeration and the derived extremal quantities.
//
// Counting is certified: candidates come from an interval Fincke-Pohst
// sweep (double intervals first, MPFR escalation when pruning is
// ambiguous), and every candidate's membership is decided exactly --
// rational data compares exactly, irrational data escalates to the
// precision ceiling and throws precision_error rather than guessing.
// Lattices in Diophantine form (p + Theta q, q) take an exact slice-
// counting path that handles badly distorted boxes at scale.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "weakadm/box.hpp"
#include "weakadm/lattice.hpp"

namespace weakadm {

struct EnumOptions {
    long long budget = 80'000'000;   // candidate visits per call
    mpfr_prec_t max_bits = 0;        // 0 = global default ceiling
};

// ---- plain counting --------------------------------------------------

// #(Lambda cap Z_Q), closed blocks.
long long count_points(const Lattice& L, const BoxSpec& box, const EnumOptions& opts = {});

// #((k Lambda) cap Z_Q \ {0}).
long long count_multiples(const Lattice& L, long long k, const BoxSpec& box,
                          const EnumOptions& opts = {});

// primitive points (gcd of basis coefficients = 1) in the box
long long count_primitive_gcd(const Lattice& L, const BoxSpec& box,
                              const EnumOptions& opts = {});

// histogram gcd(z) -> #points over nonzero points in the box
std::map<long long, long long> gcd_histogram(const Lattice& L, const BoxSpec& box,
                                             const EnumOptions& opts = {});

// ---- minima ----------------------------------------------------------

struct MinResult {
    bool attained = false;              // false = empty set, value is +infinity
    XReal value;                        // lambda (euclidean length)
    std::vector<long long> witness;
};

// first minimum of the lattice (euclidean)
MinResult lambda1(const Lattice& L, const EnumOptions& opts = {});

// first minimum of Lambda cap C_I (the excluded subspace); needs exact
// decisions about membership in C_I, hence rational data on the I-blocks
// (or certified nonzero otherwise).
MinResult lambda1_in_subspace(const Lattice& L, const Shape& s, const EnumOptions& opts = {});

// successive minima with respect to the symmetric box with per-coordinate
// radii |r_i| (blocks of dimension 1): smallest gauges of k independent
// lattice vectors, with witnesses.
std::vector<MinResult> minima_box_gauge(const Lattice& L, const std::vector<XReal>& radii,
                                        int count, const EnumOptions& opts = {});

// all k >= 1 such that k Lambda has a nonzero point in the closed ball
// B_P(R); finite because k lambda1 > R + |P| fails for large k.
std::vector<long long> multiples_hitting_ball(const Lattice& L, const std::vector<XReal>& P,
                                              const XReal& R, const EnumOptions& opts = {});

// ---- the nu staircase --------------------------------------------------

// A record point: radius rho = |x|, the value Nm_beta(x), its coefficients.
struct NuSample {
    XReal rho;
    XReal nm;
    std::vector<long long> z;
};

// Pareto front of (|x|, Nm(x)) over lattice points outside C_I with
// |x| <= rho_max: increasing rho, decreasing nm.  Queries give certified
// enclosures of inf{ Nm(x) : 0 < |x| < rho, x notin C } for rho <= rho_max.
struct NuProfile {
    Shape shape;
    std::vector<NuSample> steps;
    XReal rho_max;
    bool no_points_outside_C = false;

    struct Query {
        bool empty = true;         // no point certainly or possibly below rho
        DIv nm = DIv::whole();     // enclosure of the infimum (when !empty)
        const NuSample* arg = nullptr;
    };
    // enclosure of the strict-ball infimum of Nm
    Query min_nm_below(const XReal& rho, mpfr_prec_t max_bits = 0) const;

    // nu(Lambda, rho) = (inf Nm)^{1/t} as a double enclosure; empty = +inf
    Query nu_below(const XReal& rho, mpfr_prec_t max_bits = 0) const;
};

NuProfile nu_profile(const Lattice& L, const Shape& s, const XReal& rho_max,
                     const EnumOptions& opts = {});

// mu(Lambda, rho) = min(lambda1(Lambda cap C), nu(Lambda, rho)) as an
// enclosure; infinite when both parts are (then .empty stays true).
NuProfile::Query mu_value(const NuProfile& prof, const MinResult& lambda1_C,
                          const XReal& rho, mpfr_prec_t max_bits = 0);

} // namespace weakadm
