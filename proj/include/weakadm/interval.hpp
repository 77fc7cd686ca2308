#pragma once

// Interval arithmetic, two flavours.
//
//   DIv -- double endpoints with outward rounding emulated by nextafter.
//          Cheap filter used in enumeration inner loops.  Widths are a few
//          ulp worse than true directed rounding; soundness is what matters.
//
//   Iv  -- MPFR endpoints with true directed rounding (RNDD / RNDU) at an
//          explicit precision.  Used when DIv cannot decide and by the
//          escalation ladder in xreal.hpp.
//
// Both are closed intervals [lo, hi].  An interval with lo = NaN or hi = NaN
// (or lo > hi) is treated as "whole" / undecided by the comparison helpers:
// queries on it return "don't know", never a wrong certainty.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace weakadm {

// ---------------------------------------------------------------------------
// DIv: double interval with nextafter outward rounding
// ---------------------------------------------------------------------------

namespace detail {
inline double step_down(double x) {
    if (std::isnan(x)) return -std::numeric_limits<double>::infinity();
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double step_up(double x) {
    if (std::isnan(x)) return std::numeric_limits<double>::infinity();
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}
} // namespace detail

struct DIv {
    double lo = 0.0;
    double hi = 0.0;

    DIv() = default;
    constexpr DIv(double l, double h) : lo(l), hi(h) {}

    static DIv point(double x) { return DIv{x, x}; }
    static DIv whole() {
        const double inf = std::numeric_limits<double>::infinity();
        return DIv{-inf, inf};
    }
    // Sanitize: any NaN or inverted pair becomes the whole line.
    static DIv checked(double l, double h) {
        if (std::isnan(l) || std::isnan(h) || l > h) return whole();
        return DIv{l, h};
    }

    bool is_whole() const { return lo == -std::numeric_limits<double>::infinity() &&
                                   hi == std::numeric_limits<double>::infinity(); }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    double mid() const {
        if (!finite()) return 0.0;
        return 0.5 * (lo + hi);
    }
    double width() const { return hi - lo; }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }

    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    int sign_strict() const {   // +1 / -1 if certain, 0 if straddles or undecided
        if (lo > 0.0) return 1;
        if (hi < 0.0) return -1;
        return 0;
    }

    friend DIv operator+(const DIv& a, const DIv& b) {
        return DIv::checked(detail::step_down(a.lo + b.lo), detail::step_up(a.hi + b.hi));
    }
    friend DIv operator-(const DIv& a, const DIv& b) {
        return DIv::checked(detail::step_down(a.lo - b.hi), detail::step_up(a.hi - b.lo));
    }
    friend DIv operator-(const DIv& a) { return DIv{-a.hi, -a.lo}; }
    friend DIv operator*(const DIv& a, const DIv& b) {
        const double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        double l = c[0], h = c[0];
        for (int i = 1; i < 4; ++i) {
            if (std::isnan(c[i])) continue;      // 0 * inf: other candidates cover it
            l = std::min(l, c[i]);
            h = std::max(h, c[i]);
        }
        if (std::isnan(l) || std::isnan(h)) return whole();
        return DIv::checked(detail::step_down(l), detail::step_up(h));
    }
    friend DIv operator/(const DIv& a, const DIv& b) {
        if (b.lo <= 0.0 && 0.0 <= b.hi) return whole();
        const double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
        double l = c[0], h = c[0];
        for (int i = 1; i < 4; ++i) {
            if (std::isnan(c[i])) continue;
            l = std::min(l, c[i]);
            h = std::max(h, c[i]);
        }
        if (std::isnan(l) || std::isnan(h)) return whole();
        return DIv::checked(detail::step_down(l), detail::step_up(h));
    }

    DIv& operator+=(const DIv& o) { *this = *this + o; return *this; }
    DIv& operator-=(const DIv& o) { *this = *this - o; return *this; }
    DIv& operator*=(const DIv& o) { *this = *this * o; return *this; }
};

inline DIv sqr(const DIv& a) {
    double l, h;
    if (a.lo >= 0.0) { l = a.lo * a.lo; h = a.hi * a.hi; }
    else if (a.hi <= 0.0) { l = a.hi * a.hi; h = a.lo * a.lo; }
    else { l = 0.0; h = std::max(a.lo * a.lo, a.hi * a.hi); }
    // squares are nonnegative; keep the zero endpoint exact
    return DIv::checked(std::max(0.0, detail::step_down(l)), detail::step_up(h));
}
inline DIv abs(const DIv& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return DIv{-a.hi, -a.lo};
    return DIv{0.0, std::max(-a.lo, a.hi)};
}
inline DIv sqrt(const DIv& a) {
    if (a.hi < 0.0) return DIv::whole();
    const double l = a.lo <= 0.0 ? 0.0 : detail::step_down(std::sqrt(a.lo));
    const double h = detail::step_up(std::sqrt(a.hi));
    return DIv::checked(std::max(0.0, l), h);
}
inline DIv hull(const DIv& a, const DIv& b) {
    return DIv::checked(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}
inline DIv intersect(const DIv& a, const DIv& b) {
    return DIv::checked(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
}

// Certified order tests: true only when the relation is guaranteed.
inline bool certainly_lt(const DIv& a, const DIv& b) { return a.hi < b.lo; }
inline bool certainly_le(const DIv& a, const DIv& b) { return a.hi <= b.lo; }
inline bool certainly_gt(const DIv& a, const DIv& b) { return a.lo > b.hi; }

// ---------------------------------------------------------------------------
// Iv: MPFR interval with directed rounding
// ---------------------------------------------------------------------------

class Iv {
public:
    explicit Iv(mpfr_prec_t prec = 64) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_nan(lo_);
        mpfr_set_nan(hi_);
    }
    Iv(const Iv& o) {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Iv(Iv&& o) noexcept {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Iv& operator=(const Iv& o) {
        if (this != &o) {
            mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
            mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    Iv& operator=(Iv&& o) noexcept {
        if (this != &o) { mpfr_swap(lo_, o.lo_); mpfr_swap(hi_, o.hi_); }
        return *this;
    }
    ~Iv() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    mpfr_prec_t prec() const { return std::max(mpfr_get_prec(lo_), mpfr_get_prec(hi_)); }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    mpfr_ptr lo() { return lo_; }
    mpfr_ptr hi() { return hi_; }

    static Iv from_si(long v, mpfr_prec_t p) {
        Iv r(p);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static Iv from_d(double v, mpfr_prec_t p) {
        Iv r(p);
        mpfr_set_d(r.lo_, v, MPFR_RNDD);
        mpfr_set_d(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static Iv from_mpz(const mpz_class& z, mpfr_prec_t p) {
        Iv r(p);
        mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static Iv from_mpq(const mpq_class& q, mpfr_prec_t p) {
        Iv r(p);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Iv from_endpoints_d(double l, double h, mpfr_prec_t p) {
        Iv r(p);
        mpfr_set_d(r.lo_, l, MPFR_RNDD);
        mpfr_set_d(r.hi_, h, MPFR_RNDU);
        return r;
    }
    static Iv pi(mpfr_prec_t p) {
        Iv r(p);
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }
    static Iv zeta_ui(unsigned long n, mpfr_prec_t p) {
        Iv r(p);
        mpfr_zeta_ui(r.lo_, n, MPFR_RNDD);
        mpfr_zeta_ui(r.hi_, n, MPFR_RNDU);
        return r;
    }
    static Iv whole(mpfr_prec_t p) {
        Iv r(p);
        mpfr_set_inf(r.lo_, -1);
        mpfr_set_inf(r.hi_, 1);
        return r;
    }

    bool nan() const { return mpfr_nan_p(lo_) || mpfr_nan_p(hi_); }
    bool finite() const { return !nan() && mpfr_number_p(lo_) && mpfr_number_p(hi_); }
    bool is_point() const { return !nan() && mpfr_equal_p(lo_, hi_); }
    bool contains_zero() const {
        if (nan()) return true;
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    int sign_strict() const {
        if (nan()) return 0;
        if (mpfr_sgn(lo_) > 0) return 1;
        if (mpfr_sgn(hi_) < 0) return -1;
        return 0;
    }

    double dlo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double dhi() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    DIv hull_d() const {
        if (nan()) return DIv::whole();
        return DIv::checked(dlo(), dhi());
    }
    double mid_d() const {
        if (nan()) return std::numeric_limits<double>::quiet_NaN();
        return 0.5 * (dlo() + dhi());
    }

    // floor is the same integer for every value in the interval?
    bool floor_unique(mpz_class& out) const {
        if (nan() || !finite()) return false;
        mpz_class fl, fh;
        mpfr_get_z(fl.get_mpz_t(), lo_, MPFR_RNDD);
        mpfr_get_z(fh.get_mpz_t(), hi_, MPFR_RNDD);
        if (fl != fh) return false;
        out = fl;
        return true;
    }
    bool ceil_unique(mpz_class& out) const {
        if (nan() || !finite()) return false;
        mpz_class cl, ch;
        mpfr_get_z(cl.get_mpz_t(), lo_, MPFR_RNDU);
        mpfr_get_z(ch.get_mpz_t(), hi_, MPFR_RNDU);
        if (cl != ch) return false;
        out = cl;
        return true;
    }

    std::string str(int digits = 17) const;

private:
    mpfr_t lo_, hi_;
};

// Arithmetic (result precision = max of operand precisions).
Iv add(const Iv& a, const Iv& b);
Iv sub(const Iv& a, const Iv& b);
Iv mul(const Iv& a, const Iv& b);
Iv div(const Iv& a, const Iv& b);
Iv neg(const Iv& a);
Iv abs_i(const Iv& a);
Iv sqr_i(const Iv& a);
Iv sqrt_i(const Iv& a);      // domain clipped to [0, inf); negative hi -> NaN
Iv log_i(const Iv& a);       // requires a.hi > 0; lo endpoint <= 0 gives -inf
Iv exp_i(const Iv& a);
Iv pow_q(const Iv& a, const mpq_class& e);   // a >= 0 required (abs first)
Iv min_i(const Iv& a, const Iv& b);
Iv max_i(const Iv& a, const Iv& b);
Iv hull_i(const Iv& a, const Iv& b);

inline Iv operator+(const Iv& a, const Iv& b) { return add(a, b); }
inline Iv operator-(const Iv& a, const Iv& b) { return sub(a, b); }
inline Iv operator*(const Iv& a, const Iv& b) { return mul(a, b); }
inline Iv operator/(const Iv& a, const Iv& b) { return div(a, b); }
inline Iv operator-(const Iv& a) { return neg(a); }

inline bool certainly_lt(const Iv& a, const Iv& b) {
    if (a.nan() || b.nan()) return false;
    return mpfr_less_p(a.hi(), b.lo());
}
inline bool certainly_le(const Iv& a, const Iv& b) {
    if (a.nan() || b.nan()) return false;
    return mpfr_lessequal_p(a.hi(), b.lo());
}
inline bool certainly_gt(const Iv& a, const Iv& b) { return certainly_lt(b, a); }

} // namespace weakadm
