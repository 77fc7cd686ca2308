#pragma once

// Primitive-point counting by truncated Moebius inversion,
//
//     #(Lambda^* cap Z_Q) = sum_{k=1}^{[G]} mu(k) #(k Lambda cap Z_Q^*),
//
// independent of the gcd-filter path in enumerate.  The truncation uses the
// sharp cutoff (R + |phi(y)|) / lambda1(phi Lambda) with R = n^{1/2} Qbar;
// the coarser majorant (R + |phi(y)|)(1/mu + 1/Qbar) through the balancing
// estimate lambda1(phi Lambda) >= min(mu(Lambda, Q_max), Qbar) is computed
// alongside for reports.

#include <string>
#include <vector>

#include "weakadm/box.hpp"
#include "weakadm/enumerate.hpp"
#include "weakadm/lattice.hpp"

namespace weakadm {

struct TruncationG {
    XReal sharp;              // (R + |phi(y)|) / lambda1(phi Lambda)
    long long floor_sharp;    // [sharp]: the inversion cutoff
    DIv majorant;             // paper majorant; hi = +inf when mu ~ 0
};

// Both truncation bounds; floor_sharp is certified exact.
TruncationG truncation_G(const Lattice& L, const BoxSpec& box, const EnumOptions& opts = {});

struct MoebiusTrace {
    struct Term {
        long long k;
        int mu;
        long long count;      // #(k Lambda cap Z_Q^*)
    };
    double g_sharp = 0.0;     // upper endpoints, for reports
    double g_majorant = 0.0;
    long long g_floor = 0;
    std::vector<Term> terms;  // mu(k) != 0 only
    long long total = 0;

    std::string csv() const;  // header k,mu,count
};

struct MoebiusResult {
    long long count = 0;
    MoebiusTrace trace;
};

// The truncated inversion itself.  Exact: equals the gcd-filter count on
// every instance.  Throws budget_error if [G] exceeds the sieve cap 10^7.
MoebiusResult count_primitive_moebius(const Lattice& L, const BoxSpec& box,
                                      const EnumOptions& opts = {});

// Ratio of the primitive count to the Theorem-2 main term
// Vol Z_Q / (zeta(N) det Lambda) on a sequence of centered cubes.
struct DensityRow {
    double q = 0.0;           // cube radius
    long long count = 0;
    double main_lo = 0.0, main_hi = 0.0;
    double ratio = 0.0;       // count / midpoint of the main term
};

std::vector<DensityRow> primitive_density_experiment(const Lattice& L,
                                                     const std::vector<mpq_class>& cube_radii,
                                                     const EnumOptions& opts = {});

} // namespace weakadm
