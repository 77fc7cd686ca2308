#pragma once

// Interval Fincke-Pohst over an arbitrary interval type (DIv or Iv).
//
// Given basis columns B (any full-rank real matrix, enclosed), a center P
// and a squared radius rho2, emit every integer coefficient vector z that
// could satisfy |B z - P|^2 <= rho2.  Pruning is certified-sound: a branch
// is cut only when its partial sum certainly exceeds rho2, so the emitted
// set is a superset of the true solution set; each emission carries a flag
// saying whether membership is already certain.  Callers do the exact
// accept/reject on ambiguous candidates.
//
// Escalation protocol: run with DIv; if the Cholesky pivots or the per-level
// ranges cannot be certified, rerun with Iv at 128/256/512 bits.  A range
// that stays certified-huge is a genuine resource problem -> budget_error.

#include <cmath>
#include <functional>
#include <vector>

#include "weakadm/errors.hpp"
#include "weakadm/interval.hpp"
#include "weakadm/xreal.hpp"

namespace weakadm {
namespace detail {

struct range_blowup {};   // internal: retry at higher precision

inline double ivlo(const DIv& a) { return a.lo; }
inline double ivhi(const DIv& a) { return a.hi; }
inline double ivlo(const Iv& a) { return a.dlo(); }
inline double ivhi(const Iv& a) { return a.dhi(); }
inline DIv iv_sqr(const DIv& a) { return sqr(a); }
inline Iv iv_sqr(const Iv& a) { return sqr_i(a); }
inline DIv iv_sqrt(const DIv& a) { return sqrt(a); }
inline Iv iv_sqrt(const Iv& a) { return sqrt_i(a); }
inline bool iv_pos(const DIv& a) { return a.lo > 0.0; }
inline bool iv_pos(const Iv& a) { return a.sign_strict() > 0; }
inline bool iv_nonneg_lo(const DIv& a) { return a.lo >= 0.0; }
inline bool iv_nonneg_lo(const Iv& a) { return !a.nan() && mpfr_sgn(a.lo()) >= 0; }
inline bool iv_neg_hi(const DIv& a) { return a.hi < 0.0; }
inline bool iv_neg_hi(const Iv& a) { return !a.nan() && mpfr_sgn(a.hi()) < 0; }
inline DIv iv_zero(const DIv&) { return DIv::point(0.0); }
inline Iv iv_zero(const Iv& a) { return Iv::from_si(0, a.prec()); }

template <class IV> struct IvCtx;

template <> struct IvCtx<DIv> {
    mpfr_prec_t prec = 0;
    DIv from_xreal(const XReal& x) const { return x.fast(); }
    DIv from_ll(long long v) const {
        const double d = (double)v;
        if ((long long)d == v) return DIv::point(d);
        return DIv::checked(step_down(d), step_up(d));
    }
    DIv zero() const { return DIv::point(0.0); }
};

template <> struct IvCtx<Iv> {
    mpfr_prec_t prec = 128;
    Iv from_xreal(const XReal& x) const { return x.eval(prec); }
    Iv from_ll(long long v) const { return Iv::from_si((long)v, prec); }
    Iv zero() const { return Iv::from_si(0, prec); }
};

// Cholesky G = R^T R with certified positive pivots; false on failure.
template <class IV>
bool interval_cholesky(const std::vector<std::vector<IV>>& G, std::vector<std::vector<IV>>& R) {
    const int d = (int)G.size();
    R.assign(d, std::vector<IV>(d, iv_zero(G[0][0])));
    for (int j = 0; j < d; ++j) {
        IV s = G[j][j];
        for (int k = 0; k < j; ++k) s = s - iv_sqr(R[k][j]);
        if (!iv_pos(s)) return false;
        R[j][j] = iv_sqrt(s);
        for (int i = j + 1; i < d; ++i) {
            IV c = G[j][i];
            for (int k = 0; k < j; ++k) c = c - R[k][j] * R[k][i];
            R[j][i] = c / R[j][j];
        }
    }
    return true;
}

// emit(z, certainly_inside)
template <class IV>
using EmitFn = std::function<void(const std::vector<long long>&, bool)>;

template <class IV>
class BallEnum {
public:
    BallEnum(std::vector<std::vector<IV>> R, std::vector<IV> w, IV rho2,
             long long* budget, std::function<void(const std::vector<long long>&, bool)> emit)
        : R_(std::move(R)), w_(std::move(w)), rho2_(std::move(rho2)),
          budget_(budget), emit_(std::move(emit)), d_((int)R_.size()) {}

    void run() {
        z_.assign(d_, 0);
        std::vector<IV> cross(d_, iv_zero(rho2_));
        descend(d_ - 1, rho2_, cross);
    }

private:
    void descend(int i, const IV& rem, const std::vector<IV>& cross) {
        if (iv_neg_hi(rem)) return;
        if (i < 0) {
            emit_(z_, iv_nonneg_lo(rem));
            return;
        }
        const IV t = iv_sqrt(rem);
        const IV lo_end = w_[i] - (cross[i] + t) / R_[i][i];
        const IV hi_end = w_[i] - (cross[i] - t) / R_[i][i];
        const double lo = ivlo(lo_end), hi = ivhi(hi_end);
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw range_blowup{};
        if (hi - lo > 4.0e9) throw range_blowup{};
        if (std::fabs(lo) > 1e15 || std::fabs(hi) > 1e15)
            throw budget_error("enumeration coordinates out of addressable range");
        const long long zmin = (long long)std::floor(lo);
        const long long zmax = (long long)std::ceil(hi);
        for (long long v = zmin; v <= zmax; ++v) {
            if (--*budget_ < 0) throw budget_error("enumeration budget exhausted");
            const IV dz = ctx_.from_ll(v) - w_[i];
            const IV s = R_[i][i] * dz + cross[i];
            const IV rem2 = rem - iv_sqr(s);
            if (iv_neg_hi(rem2)) continue;
            z_[i] = v;
            std::vector<IV> cross2(cross);
            for (int j = 0; j < i; ++j) cross2[j] = cross2[j] + R_[j][i] * dz;
            descend(i - 1, rem2, cross2);
        }
        z_[i] = 0;
    }

    std::vector<std::vector<IV>> R_;
    std::vector<IV> w_;
    IV rho2_;
    long long* budget_;
    std::function<void(const std::vector<long long>&, bool)> emit_;
    int d_;
    std::vector<long long> z_;
    IvCtx<IV> ctx_;
};

// One escalation pass: build G, w, rho2 in the given interval type and run.
// Returns false when this precision could not certify the sweep.
template <class IV>
bool run_ball_pass(const std::vector<std::vector<XReal>>& gram,
                   const std::vector<XReal>& w_exact, const XReal& rho2,
                   mpfr_prec_t prec, long long* budget,
                   const std::function<void(const std::vector<long long>&, bool)>& emit) {
    IvCtx<IV> ctx;
    ctx.prec = prec;
    const int d = (int)gram.size();
    std::vector<std::vector<IV>> G(d, std::vector<IV>(d, ctx.zero()));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G[i][j] = ctx.from_xreal(gram[i][j]);
    std::vector<std::vector<IV>> R;
    if (!interval_cholesky(G, R)) return false;
    std::vector<IV> w(d, ctx.zero());
    for (int i = 0; i < d; ++i) w[i] = ctx.from_xreal(w_exact[i]);
    try {
        BallEnum<IV> be(std::move(R), std::move(w), ctx.from_xreal(rho2), budget, emit);
        be.run();
    } catch (const range_blowup&) {
        return false;
    }
    return true;
}

// Full escalation: DIv, then Iv at 128/256/512 bits.
inline void run_ball(const std::vector<std::vector<XReal>>& gram,
                     const std::vector<XReal>& w_exact, const XReal& rho2,
                     long long* budget,
                     const std::function<void(const std::vector<long long>&, bool)>& emit) {
    if (run_ball_pass<DIv>(gram, w_exact, rho2, 0, budget, emit)) return;
    for (mpfr_prec_t p = 128; p <= 512; p *= 2)
        if (run_ball_pass<Iv>(gram, w_exact, rho2, p, budget, emit)) return;
    throw precision_error("ball enumeration could not be certified at the precision ceiling");
}

} // namespace detail
} // namespace weakadm
