// Bound evaluators.  The thm1 infimum is computed exactly: mu(Lambda, B) is
// constant on the half-open intervals between staircase breakpoints (strict
// balls), and the objective decreases in B on each of them, so the infimum
// is attained on {breakpoint radii} + {Qmax}.  The geometric grid evaluated
// alongside only cross-checks that; refining it cannot move the result.
//
// The skriganov evaluators are comparators, not certificates: their inner
// radii (2^r Qbar/Qmin and the crude-lower rescaling) grow far beyond any
// affordable enumeration horizon, so queries past the horizon reuse the
// horizon value of nu and set nu_capped.  Since nu is nonincreasing in the
// radius this can only underestimate those right-hand sides.

#include "weakadm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weakadm/errors.hpp"

namespace weakadm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// clamp an enclosure of a nonnegative quantity (repairs whole() from
// division by a zero-straddling interval)
DIv nonneg(DIv v) {
    if (std::isnan(v.lo) || v.lo < 0.0) v.lo = 0.0;
    if (std::isnan(v.hi)) v.hi = kInf;
    return v;
}

DIv dpow(const DIv& v, int e) {
    DIv r = DIv::point(1.0);
    for (int i = 0; i < e; ++i) r = r * v;
    return r;
}

// log/exp on intervals; libm is within 1 ulp, two nextafter steps cover it
DIv div_log(const DIv& v) {
    if (!(v.lo > 0.0)) return DIv::whole();
    using detail::step_down;
    using detail::step_up;
    return DIv::checked(step_down(step_down(std::log(v.lo))),
                        step_up(step_up(std::log(v.hi))));
}
DIv div_exp(const DIv& v) {
    using detail::step_down;
    using detail::step_up;
    const double l = v.lo == -kInf ? 0.0 : step_down(step_down(std::exp(v.lo)));
    const double h = v.hi == kInf ? kInf : step_up(step_up(std::exp(v.hi)));
    return DIv::checked(std::max(0.0, l), h);
}
DIv div_ln2() {
    using detail::step_down;
    using detail::step_up;
    return DIv{step_down(M_LN2), step_up(M_LN2)};
}

// 1/mu with the report conventions: empty = infinite mu = 0; exact zero = inf
DIv inverse_mu(const NuProfile::Query& mu) {
    if (mu.empty) return DIv::point(0.0);
    if (mu.nm.hi <= 0.0) return DIv{kInf, kInf};
    return nonneg(DIv::point(1.0) / mu.nm);
}

double report_value(const NuProfile::Query& q) {
    if (q.empty) return kInf;
    return q.nm.mid();
}

// record the weak-admissibility verdict of a nu enclosure on the report
void flag_nu(BoundReport& rep, const NuProfile::Query& q) {
    if (q.empty) return;                       // nu = +infinity, hypothesis fine
    if (q.nm.hi <= 0.0) rep.weakly_admissible = false;
    else if (q.nm.lo <= 0.0) rep.hypothesis_uncertain = true;
}

} // namespace

// ----------------------------------------------------------------------
// constants
// ----------------------------------------------------------------------

XReal Constants::default_kappa(int N) {
    // 16 N^{5/2} = 16 N^2 sqrt(N), kept in canonical surd form
    return XReal((long)(16 * N * N)) * sqrt(XReal((long)N));
}

Constants Constants::for_shape(const Shape& s, long M) {
    return make(s.dim(), s.blocks(), default_kappa(s.dim()), M);
}

Constants Constants::make(int N, int n, const XReal& kappa, long M) {
    if (N < 2 || n < 1 || M < 1) throw structural_error("Constants: need N >= 2, n >= 1, M >= 1");
    if (!(kappa.fast().lo > 0.0)) throw structural_error("Constants: kappa must be positive");
    Constants c;
    c.N = N;
    c.n = n;
    c.M = M;
    c.kappa = kappa;
    return c;
}

XReal Constants::c4(int D) {
    // D^{3D^2/2}: split off the half power so odd D stays a canonical surd
    const long e = 3L * D * D;
    if (e % 2 == 0) return pow_i(XReal((long)D), e / 2);
    return pow_i(XReal((long)D), (e - 1) / 2) * sqrt(XReal((long)D));
}

XReal Constants::c6(int D) {
    return pow_i(XReal((long)D), 2L * D + 1);
}

XReal Constants::c1() const {
    return XReal(M) * pow_i((XReal(1) + kappa) * pow_i(XReal((long)N), 2L * N), N);
}

XReal Constants::c5() const {
    return pow_i(XReal(1) + XReal(2) * sqrt(XReal((long)n)) * kappa, N - 1) * XReal(M) * c4(N);
}

XReal Constants::c7() const {
    return pow_i(XReal(1) + XReal(2) * sqrt(XReal((long)n)) * kappa, N - 1) * XReal(M + 1) * c4(N);
}

XReal Constants::c2() const {
    // aggregation of the three proof branches (primitive-count error)
    const XReal t1 = c7();
    const XReal t2 = pow_i(XReal(2), N) * c7();     // 2^N c4(N)(1+2 sqrt(n) kappa)^{N-1}(M+1)
    const XReal t3 = XReal(2) * c6(N);
    return xmax(xmax(t1, t2), t3);
}

XReal xmax(const XReal& a, const XReal& b) {
    if (auto c = try_compare(a, b, 256)) return *c >= 0 ? a : b;
    return a;   // indistinguishable at 256 bits: either one represents the max
}

// ----------------------------------------------------------------------
// counting-lemma values
// ----------------------------------------------------------------------

XReal mvcl_bound(int D, long M, const XReal& L, const XReal& lambda1, bool hit) {
    if (D < 1 || M < 1) throw structural_error("mvcl_bound: need D >= 1, M >= 1");
    if (!(lambda1.fast().lo > 0.0)) throw structural_error("mvcl_bound: lambda1 must be positive");
    const XReal ratio = pow_i(L / lambda1, D - 1);
    return Constants::c4(D) * XReal(M) * (ratio + XReal(hit ? 1 : 0));
}

XReal mvcl_bound_minima(int D, long M, const XReal& L, const std::vector<XReal>& minima) {
    if (D < 2 || M < 1) throw structural_error("mvcl_bound_minima: need D >= 2, M >= 1");
    if ((int)minima.size() < D - 1)
        throw structural_error("mvcl_bound_minima: need the first D-1 minima");
    XReal best(1);
    XReal prod(1);
    for (int j = 1; j < D; ++j) {
        prod = prod * minima[j - 1];
        best = xmax(best, pow_i(L, j) / prod);
    }
    return Constants::c4(D) * XReal(M) * best;
}

// ----------------------------------------------------------------------
// thm1: c1 inf_B (Qbar/mu(Lambda,B) + Qmax/B)^{N-1}
// ----------------------------------------------------------------------

BoundReport thm1_bound(const Lattice& L, const BoxSpec& box, const Constants& cst,
                       int grid_per_decade, const EnumOptions& opts) {
    const int N = box.shape.dim();
    if (L.dim() != N) throw structural_error("thm1_bound: lattice/box dimension mismatch");
    if (cst.N != N || cst.n != box.shape.blocks())
        throw structural_error("thm1_bound: constants built for a different shape");
    if (grid_per_decade < 1) throw structural_error("thm1_bound: grid density must be >= 1");

    BoundReport rep;
    rep.name = "thm1";

    const NuProfile prof = nu_profile(L, box.shape, box.qmax, opts);
    const MinResult lamC = lambda1_in_subspace(L, box.shape, opts);
    flag_nu(rep, prof.nu_below(box.qmax, opts.max_bits));

    // exact breakpoints first, then the geometric cross-check grid
    std::vector<XReal> cand;
    cand.push_back(box.qmax);
    for (const NuSample& st : prof.steps) cand.push_back(st.rho);
    const double qmax_hi = box.qmax.fast().hi;
    const double qmax_lo = box.qmax.fast().lo;
    const double ratio = std::pow(10.0, -1.0 / grid_per_decade);
    double b = qmax_hi * ratio;
    for (int i = 0; i < 6 * grid_per_decade && b > 0.0; ++i, b *= ratio)
        if (b < qmax_lo) cand.push_back(XReal(mpq_class(b)));

    const DIv qbarf = box.qbar.fast();
    const DIv qmaxf = box.qmax.fast();
    DIv best = DIv{kInf, kInf};
    double best_b = qmax_hi, best_mu = kInf;
    for (const XReal& B : cand) {
        const NuProfile::Query mu = mu_value(prof, lamC, B, opts.max_bits);
        const DIv inv_mu = inverse_mu(mu);
        if (!mu.empty && mu.nm.lo <= 0.0 && mu.nm.hi > 0.0) rep.hypothesis_uncertain = true;
        const DIv v = dpow(nonneg(qbarf * inv_mu) + nonneg(qmaxf / B.fast()), N - 1);
        if (v.hi < best.hi) {
            best = v;
            best_b = B.fast().mid();
            best_mu = report_value(mu);
        }
    }

    rep.value = nonneg(cst.c1().fast() * best);
    rep.finite = rep.value.hi < kInf;
    rep.params["N"] = N;
    rep.params["M"] = (double)cst.M;
    rep.params["kappa"] = cst.kappa.fast().mid();
    rep.params["c1"] = cst.c1().fast().hi;
    rep.params["qbar"] = qbarf.mid();
    rep.params["qmax"] = qmaxf.mid();
    rep.params["B_star"] = best_b;
    rep.params["mu_star"] = best_mu;
    rep.params["grid_per_decade"] = grid_per_decade;
    rep.params["candidates"] = (double)cand.size();
    return rep;
}

// ----------------------------------------------------------------------
// thm2 and its corollary form
// ----------------------------------------------------------------------

BoundReport thm2_bound(const Lattice& L, const BoxSpec& box, const Constants& cst,
                       double a, double c2_override, const EnumOptions& opts) {
    const int N = box.shape.dim();
    if (L.dim() != N) throw structural_error("thm2_bound: lattice/box dimension mismatch");
    if (cst.N != N || cst.n != box.shape.blocks())
        throw structural_error("thm2_bound: constants built for a different shape");

    BoundReport rep;
    rep.name = "thm2";

    const NuProfile prof = nu_profile(L, box.shape, box.qmax, opts);
    const MinResult lamC = lambda1_in_subspace(L, box.shape, opts);
    const NuProfile::Query mu = mu_value(prof, lamC, box.qmax, opts.max_bits);
    flag_nu(rep, prof.nu_below(box.qmax, opts.max_bits));

    const DIv qbarf = box.qbar.fast();
    const DIv inv_mu = inverse_mu(mu);
    const DIv qm1 = nonneg(qbarf * inv_mu) + DIv::point(1.0);   // Qbar/mu + 1

    const DIv nf = pow_i(XReal((long)N), 2L * N + 2).fast();
    const DIv reach = qbarf + box.phi_center_norm().fast();
    const DIv H = nonneg(nf * reach * (inv_mu + nonneg(DIv::point(1.0) / qbarf)));

    const DivisorBoundT T(a, divisor_envelope());
    DIv tdv;
    if (H.hi < kInf) {
        const Iv tv = T.value(Iv::from_endpoints_d(H.lo, H.hi, 96));
        tdv = DIv::checked(tv.dlo(), tv.dhi());
        rep.heuristic_T = T.heuristic(H.hi);
    } else {
        tdv = DIv{kInf, kInf};
        rep.heuristic_T = true;
    }

    const DIv c2v = c2_override > 0.0 ? DIv::point(c2_override) : cst.c2().fast();
    rep.value = nonneg(c2v * (dpow(qm1, N - 1) + qm1 * tdv));
    rep.finite = rep.value.hi < kInf;
    rep.params["N"] = N;
    rep.params["a"] = a;
    rep.params["b"] = (double)T.crossover();
    rep.params["c2"] = c2v.hi;
    rep.params["mu"] = report_value(mu);
    rep.params["H"] = H.mid();
    rep.params["T_H"] = tdv.hi;
    rep.params["phi_y"] = box.phi_center_norm().fast().mid();
    rep.params["qbar"] = qbarf.mid();
    return rep;
}

BoundReport corollary_bound(const Lattice& L, const BoxSpec& box, const Constants& cst,
                            double a, const EnumOptions& opts) {
    const int N = box.shape.dim();
    if (L.dim() != N) throw structural_error("corollary_bound: lattice/box dimension mismatch");
    if (cst.N != N || cst.n != box.shape.blocks())
        throw structural_error("corollary_bound: constants built for a different shape");

    BoundReport rep;
    rep.name = "cor";

    const NuProfile prof = nu_profile(L, box.shape, box.qmax, opts);
    const MinResult lamC = lambda1_in_subspace(L, box.shape, opts);
    const NuProfile::Query mu = mu_value(prof, lamC, box.qmax, opts.max_bits);
    flag_nu(rep, prof.nu_below(box.qmax, opts.max_bits));

    const DivisorBoundT T(a, divisor_envelope());
    const double bcross = (double)T.crossover();
    const DIv qbarf = box.qbar.fast();

    // side condition Qbar >= b(a) mu; mu infinite or undecided fails the gate
    if (mu.empty || !(mu.nm.lo > 0.0) || !(qbarf.lo >= bcross * mu.nm.hi)) {
        rep.applicable = false;
        rep.value = DIv::point(0.0);
        rep.finite = true;
        rep.params["b"] = bcross;
        rep.params["mu"] = report_value(mu);
        return rep;
    }

    const XReal eta = XReal(1) + norm(box.center) / box.qmin;
    const DIv qom = nonneg(qbarf / mu.nm);                     // Qbar/mu
    const DIv x = nonneg(eta.fast() * qom);                    // eta Qbar/mu >= b >= e^e
    const DIv lx = div_log(x);
    const DIv expo = lx / div_log(lx);
    const DIv ax = div_exp(expo * div_log(DIv::point(a)));     // a^{log x/loglog x}
    const DIv c3v = cst.c2().fast();                           // artifact convention c3 = c2

    rep.heuristic_T = x.hi > (double)divisor_envelope().limit();
    rep.value = nonneg(c3v * (dpow(qom, N - 1) + ax * qom));
    rep.finite = rep.value.hi < kInf;
    rep.params["N"] = N;
    rep.params["a"] = a;
    rep.params["b"] = bcross;
    rep.params["c3"] = c3v.hi;
    rep.params["mu"] = report_value(mu);
    rep.params["eta"] = eta.fast().mid();
    rep.params["exponent"] = expo.mid();
    rep.params["qbar"] = qbarf.mid();
    return rep;
}

// ----------------------------------------------------------------------
// skriganov comparison values
// ----------------------------------------------------------------------

XReal hermite_gamma(int N) {
    if (N == 2) return sqrt(XReal(mpq_class(4, 3)));
    if (N == 3) return pow_q(XReal(2), mpq_class(1, 3));
    throw structural_error("hermite_gamma: configured for N = 2, 3 only");
}

namespace {

// nu(Lambda, rho) from a finite profile, reusing the horizon value (and
// flagging) for radii beyond it
NuProfile::Query nu_capped_at(const NuProfile& prof, double rho, bool* capped,
                              mpfr_prec_t bits) {
    const double hor = prof.rho_max.fast().lo;
    if (!(rho < hor)) {
        if (rho > prof.rho_max.fast().hi) *capped = true;
        return prof.nu_below(prof.rho_max, bits);
    }
    return prof.nu_below(XReal(mpq_class(rho)), bits);
}

void require_unimodular(const Lattice& L, const char* who) {
    const auto c = try_compare(L.det_abs(), XReal(1), 256);
    if (c && *c != 0) throw structural_error(std::string(who) + ": lattice must be unimodular");
}

} // namespace

BoundReport skriganov_bound(const Lattice& L, const BoxSpec& box,
                            double nu_horizon, int grid_per_decade,
                            const EnumOptions& opts) {
    const int N = box.shape.dim();
    if (L.dim() != N) throw structural_error("skriganov_bound: lattice/box dimension mismatch");
    require_unimodular(L, "skriganov_bound");

    BoundReport rep;
    rep.name = "skriganov";

    const XReal gamma = hermite_gamma(N);
    const XReal qratio_star = xmax(box.qbar / box.qmin, gamma);
    const double qs_hi = qratio_star.fast().hi;
    const double hor = std::max(nu_horizon > 0.0 ? nu_horizon : std::max(32.0, 4.0 * qs_hi), qs_hi);

    const Lattice dual = L.dual();
    const NuProfile prof = nu_profile(dual, Shape::cube(N), XReal(mpq_class(hor)), opts);

    const NuProfile::Query nu0 = prof.nu_below(qratio_star, opts.max_bits);
    flag_nu(rep, nu0);
    rep.params["gamma_N"] = gamma.fast().mid();
    rep.params["qratio_star"] = qratio_star.fast().mid();
    rep.params["horizon"] = hor;
    rep.params["nu_dual"] = report_value(nu0);
    if (!rep.weakly_admissible) {
        rep.value = DIv{kInf, kInf};
        rep.finite = false;
        return rep;
    }
    const DIv prefactor = nu0.empty ? DIv::point(0.0) : nonneg(DIv::point(1.0) / dpow(nu0.nm, N));

    // grid over rho > gamma_N^{1/2}; past rho = Qbar^{2(N-1)} the first term
    // is below 1 and stops improving anything
    const DIv qbarf = box.qbar.fast();
    const DIv qratf = nonneg((box.qbar / box.qmin).fast());
    const double rho_lo = std::sqrt(gamma.fast().hi) * 1.02;
    const double rho_hi = std::max(rho_lo * 1.2, 4.0 * std::pow(qbarf.hi, 2.0 * (N - 1)));
    const double step = std::pow(10.0, 1.0 / grid_per_decade);

    DIv best = DIv{kInf, kInf};
    double best_rho = rho_lo, best_r = 0.0;
    bool capped = false;
    for (double rho = rho_lo; rho <= rho_hi; rho *= step) {
        const DIv first = nonneg(dpow(qbarf, N - 1) / sqrt(DIv::point(rho)));
        const NuProfile::Query q1 = nu_capped_at(prof, rho * qratf.hi, &capped, opts.max_bits);
        DIv tot;
        double r_mid = 0.0;
        if (q1.empty) {
            tot = first;                          // nu = infinity: second term 0
        } else if (q1.nm.hi <= 0.0) {
            rep.weakly_admissible = false;
            tot = DIv{kInf, kInf};
        } else {
            const DIv r = DIv::point((double)N * N) +
                          DIv::point((double)N) * div_log(DIv::point(rho) / q1.nm);
            r_mid = r.mid();
            const DIv rad2 = div_exp(r * div_ln2()) * qratf;   // 2^r Qbar/Qmin
            const NuProfile::Query q2 = nu_capped_at(prof, rad2.hi, &capped, opts.max_bits);
            DIv second;
            if (q2.empty) second = DIv::point(0.0);
            else if (q2.nm.hi <= 0.0) second = DIv{kInf, kInf};
            else second = nonneg(dpow(nonneg(r), N - 1) / dpow(q2.nm, N));
            tot = first + second;
        }
        if (tot.hi < best.hi) {
            best = tot;
            best_rho = rho;
            best_r = r_mid;
        }
    }

    rep.nu_capped = capped;
    rep.value = nonneg(prefactor * best);
    rep.finite = rep.value.hi < kInf;
    rep.params["rho_star"] = best_rho;
    rep.params["r_star"] = best_r;
    rep.params["grid_per_decade"] = grid_per_decade;
    return rep;
}

BoundReport skriganov_crude_lower(const Lattice& L, const BoxSpec& box,
                                  double nu_horizon, const EnumOptions& opts) {
    const int N = box.shape.dim();
    if (L.dim() != N) throw structural_error("skriganov_crude_lower: lattice/box dimension mismatch");
    require_unimodular(L, "skriganov_crude_lower");

    BoundReport rep;
    rep.name = "skriganov_lower";

    const XReal gamma = hermite_gamma(N);
    const XReal qf = pow_q(box.qmax / box.qbar, mpq_class(1, N - 1));   // distortion scale
    rep.params["Qf"] = qf.fast().mid();
    rep.params["gamma_N"] = gamma.fast().mid();

    // the comparison assumes a sufficiently distorted box: Qf > gamma_N^{1/2}
    if (!(qf.fast().lo * qf.fast().lo > gamma.fast().hi)) {
        rep.applicable = false;
        rep.value = DIv::point(0.0);
        return rep;
    }

    const double qf_hi = qf.fast().hi;
    const double hor = std::max(nu_horizon > 0.0 ? nu_horizon : std::max(32.0, 4.0 * qf_hi), qf_hi);
    const NuProfile prof = nu_profile(L, Shape::cube(N), XReal(mpq_class(hor)), opts);

    bool capped = false;
    const NuProfile::Query nua = nu_capped_at(prof, qf_hi, &capped, opts.max_bits);
    flag_nu(rep, nua);
    rep.params["horizon"] = hor;
    rep.params["nu_a"] = report_value(nua);
    if (!rep.weakly_admissible) {
        rep.value = DIv{kInf, kInf};
        rep.finite = false;
        return rep;
    }
    if (nua.empty) {
        rep.value = DIv::point(0.0);        // both factors infinite
        return rep;
    }

    // second radius nu(L,Qf)^{-N log 2} Qf
    const DIv scale = div_exp(DIv::point(-(double)N) * div_ln2() * div_log(nonneg(nua.nm)));
    const DIv rad_b = nonneg(scale * qf.fast());
    const NuProfile::Query nub = nu_capped_at(prof, rad_b.hi, &capped, opts.max_bits);
    flag_nu(rep, nub);
    rep.nu_capped = capped;
    rep.params["radius_b"] = rad_b.mid();
    rep.params["nu_b"] = report_value(nub);
    if (nub.empty) {
        rep.value = DIv::point(0.0);
        return rep;
    }

    rep.value = nonneg(DIv::point(1.0) / dpow(nonneg(nua.nm) * nonneg(nub.nm), N));
    rep.finite = rep.value.hi < kInf;
    return rep;
}

BoundReport thm0_bound(const Lattice& L, const BoxSpec& box, const EnumOptions& opts) {
    const int N = box.shape.dim();
    if (L.dim() != N) throw structural_error("thm0_bound: lattice/box dimension mismatch");

    BoundReport rep;
    rep.name = "thm0";

    const XReal rho = box.qmax / box.qbar;        // = Qf^{N-1}
    const NuProfile prof = nu_profile(L, Shape::cube(N), rho, opts);
    const NuProfile::Query nu = prof.nu_below(rho, opts.max_bits);
    flag_nu(rep, nu);
    rep.params["rho"] = rho.fast().mid();
    rep.params["nu"] = report_value(nu);
    rep.params["qbar"] = box.qbar.fast().mid();
    if (!rep.weakly_admissible) {
        rep.value = DIv{kInf, kInf};
        rep.finite = false;
        return rep;
    }
    if (nu.empty) {
        rep.value = DIv::point(0.0);              // nu = infinity
        return rep;
    }
    rep.value = nonneg(dpow(box.qbar.fast(), N - 1) / dpow(nonneg(nu.nm), N - 1));
    rep.finite = rep.value.hi < kInf;
    return rep;
}

} // namespace weakadm
