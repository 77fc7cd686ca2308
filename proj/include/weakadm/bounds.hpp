#pragma once

// Evaluators for the explicit counting bounds and their constants.
//
//   thm1             c1 inf_{0<B<=Qmax} (Qbar/mu(Lambda,B) + Qmax/B)^{N-1}
//   thm2             c2 ((Qbar/mu+1)^{N-1} + (Qbar/mu+1) T(H)),
//                    H = N^{2N+2} (Qbar+|phi(y)|)(1/mu + 1/Qbar), mu = mu(Lambda,Qmax)
//   cor              c3 ((Qbar/mu)^{N-1} + a^{log(eta Qbar/mu)/loglog(eta Qbar/mu)} (Qbar/mu))
//                    for Qbar >= b(a) mu, eta = 1 + |y|/Qmin
//   skriganov        nu(D,(Qbar/Qmin)*)^{-N} inf_{rho>gamma_N^{1/2}}
//                    (Qbar^{N-1}/sqrt(rho) + r^{N-1}/nu(D,2^r Qbar/Qmin)^N)
//                    with D the dual lattice, r = N^2 + N log(rho/nu(D,rho Qbar/Qmin))
//   skriganov_lower  (nu(L,Qf) nu(L, nu(L,Qf)^{-N log 2} Qf))^{-N}, Qf = (Qmax/Qbar)^{1/(N-1)}
//   thm0             Qbar^{N-1} nu(L, Qmax/Qbar)^{-(N-1)}
//   mvcl / thm54     counting-lemma values for one convex set
//
// mu(Lambda, B) is a step function of B whose breakpoints are the witness
// norms of the nu staircase, and between breakpoints the thm1 objective is
// decreasing in B; the candidate set {breakpoint radii} + {Qmax} therefore
// attains the exact infimum.  A geometric grid (--grid-density points per
// decade, documented tolerance 1%) is evaluated alongside as a cross-check.
//
// Every report carries its intermediate quantities (B*, mu, H, r, rho, eta,
// ...) for audit.  Degenerate conventions follow the definitions: 1/mu = 0
// when mu is infinite, and a value of +infinity when mu = 0 at every
// candidate.  Hypothesis failures (weak admissibility, side conditions) are
// flagged on the report, never silently absorbed.

#include <map>
#include <string>
#include <vector>

#include "weakadm/box.hpp"
#include "weakadm/divisor.hpp"
#include "weakadm/enumerate.hpp"
#include "weakadm/lattice.hpp"

namespace weakadm {

// ---- constants ---------------------------------------------------------

// The explicit constants, exact:
//   c1 = M ((1+kappa) N^{2N})^N          c4(D) = D^{3D^2/2}
//   c5 = (1+2 sqrt(n) kappa)^{N-1} M c4(N)
//   c6(D) = D^{2D+1}
//   c7 = (1+2 sqrt(n) kappa)^{N-1} (M+1) c4(N)
//   c2 = max(c7, 2^N c4(N) (1+2 sqrt(n) kappa)^{N-1} (M+1), 2 c6(N))
// c2 (and c3 = c2 in the corollary evaluator) are existence constants in the
// source results; the values used here are derivation-traceable conventions
// and are reported as such.  Default kappa is 16 N^{5/2}.
struct Constants {
    int N = 2;        // total dimension
    int n = 2;        // number of blocks
    long M = 1;       // boundary-partition constant (1 for convex sets)
    XReal kappa;

    static XReal default_kappa(int N);                    // 16 N^2 sqrt(N)
    static Constants for_shape(const Shape& s, long M = 1);
    static Constants make(int N, int n, const XReal& kappa, long M);

    static XReal c4(int D);
    static XReal c6(int D);
    XReal c1() const;
    XReal c5() const;
    XReal c7() const;
    XReal c2() const;
};

// max by certified comparison; numerically indistinguishable values (at 256
// bits) are treated as equal and the first argument is returned
XReal xmax(const XReal& a, const XReal& b);

// ---- reports -----------------------------------------------------------

struct BoundReport {
    std::string name;                  // thm1 | thm2 | cor | skriganov | ...
    DIv value = DIv::point(0.0);       // certified enclosure, hi may be +inf
    bool finite = true;                // value.hi < +inf
    bool weakly_admissible = true;     // nu > 0 held on everything evaluated
    bool hypothesis_uncertain = false; // a nu enclosure touched 0 undecidedly
    bool applicable = true;            // side condition of the formula held
    bool nu_capped = false;            // a nu query ran past the horizon
    bool heuristic_T = false;          // divisor bound beyond the sieve range
    std::map<std::string, double> params;
};

// ---- counting-lemma values ----------------------------------------------

// c4(D) M ((L/lambda1)^{D-1} + [hit]) for one convex set of diameter-scale L
XReal mvcl_bound(int D, long M, const XReal& L, const XReal& lambda1, bool hit);

// variant with all successive minima: c4(D) M max_{1<=j<D} {1, L^j/(lambda_1...lambda_j)}
XReal mvcl_bound_minima(int D, long M, const XReal& L, const std::vector<XReal>& minima);

// ---- main bounds ---------------------------------------------------------

BoundReport thm1_bound(const Lattice& L, const BoxSpec& box, const Constants& cst,
                       int grid_per_decade = 64, const EnumOptions& opts = {});

BoundReport thm2_bound(const Lattice& L, const BoxSpec& box, const Constants& cst,
                       double a = 3.0, double c2_override = 0.0,
                       const EnumOptions& opts = {});

BoundReport corollary_bound(const Lattice& L, const BoxSpec& box, const Constants& cst,
                            double a = 3.0, const EnumOptions& opts = {});

// ---- skriganov comparison -------------------------------------------------

// Hermite constant gamma_N as configuration value, N in {2, 3}
XReal hermite_gamma(int N);

// nu_horizon caps the dual-profile enumeration radius (0 = automatic); radii
// beyond it reuse the horizon value and set nu_capped (the reported value can
// then underestimate the true right-hand side)
BoundReport skriganov_bound(const Lattice& L, const BoxSpec& box,
                            double nu_horizon = 0.0, int grid_per_decade = 16,
                            const EnumOptions& opts = {});

BoundReport skriganov_crude_lower(const Lattice& L, const BoxSpec& box,
                                  double nu_horizon = 0.0,
                                  const EnumOptions& opts = {});

// the Theorem 0 value at B = Qmax/Qbar
BoundReport thm0_bound(const Lattice& L, const BoxSpec& box,
                       const EnumOptions& opts = {});

} // namespace weakadm
