#include "weakadm/interval.hpp"

#include <cstdio>
#include <vector>

namespace weakadm {

namespace {

mpfr_prec_t pmax(const Iv& a, const Iv& b) { return std::max(a.prec(), b.prec()); }

} // namespace

std::string Iv::str(int digits) const {
    char buf[512];
    if (nan()) return "[nan]";
    mpfr_t mid;
    mpfr_init2(mid, prec() + 8);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, mid);
    mpfr_clear(mid);
    return std::string(buf);
}

Iv add(const Iv& a, const Iv& b) {
    Iv r(pmax(a, b));
    mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

Iv sub(const Iv& a, const Iv& b) {
    Iv r(pmax(a, b));
    mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
}

Iv neg(const Iv& a) {
    Iv r(a.prec());
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    return r;
}

// min/max over the four endpoint products; NaN candidates (0 * inf) are
// ignored -- the remaining candidates always cover the true range then.
Iv mul(const Iv& a, const Iv& b) {
    const mpfr_prec_t p = pmax(a, b);
    Iv r(p);
    if (a.nan() || b.nan()) return Iv::whole(p);
    mpfr_t t;
    mpfr_init2(t, p);

    mpfr_mul(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_mul(t, a.lo(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_mul(t, a.hi(), b.lo(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_mul(t, a.hi(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);

    mpfr_mul(r.hi(), a.lo(), b.lo(), MPFR_RNDU);
    mpfr_mul(t, a.lo(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_mul(t, a.hi(), b.lo(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_mul(t, a.hi(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);

    mpfr_clear(t);
    if (r.nan()) return Iv::whole(p);
    return r;
}

Iv div(const Iv& a, const Iv& b) {
    const mpfr_prec_t p = pmax(a, b);
    if (a.nan() || b.nan() || b.contains_zero()) return Iv::whole(p);
    Iv r(p);
    mpfr_t t;
    mpfr_init2(t, p);

    mpfr_div(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_div(t, a.lo(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_div(t, a.hi(), b.lo(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_div(t, a.hi(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);

    mpfr_div(r.hi(), a.lo(), b.lo(), MPFR_RNDU);
    mpfr_div(t, a.lo(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_div(t, a.hi(), b.lo(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_div(t, a.hi(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);

    mpfr_clear(t);
    if (r.nan()) return Iv::whole(p);
    return r;
}

Iv abs_i(const Iv& a) {
    Iv r(a.prec());
    if (a.nan()) return Iv::whole(a.prec());
    if (mpfr_sgn(a.lo()) >= 0) return a;
    if (mpfr_sgn(a.hi()) <= 0) return neg(a);
    mpfr_set_zero(r.lo(), 1);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

Iv sqr_i(const Iv& a) {
    const mpfr_prec_t p = a.prec();
    if (a.nan()) return Iv::whole(p);
    Iv r(p);
    if (mpfr_sgn(a.lo()) >= 0) {
        mpfr_sqr(r.lo(), a.lo(), MPFR_RNDD);
        mpfr_sqr(r.hi(), a.hi(), MPFR_RNDU);
    } else if (mpfr_sgn(a.hi()) <= 0) {
        mpfr_sqr(r.lo(), a.hi(), MPFR_RNDD);
        mpfr_sqr(r.hi(), a.lo(), MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo(), 1);
        mpfr_t t;
        mpfr_init2(t, p);
        mpfr_sqr(r.hi(), a.lo(), MPFR_RNDU);
        mpfr_sqr(t, a.hi(), MPFR_RNDU);
        mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
        mpfr_clear(t);
    }
    return r;
}

Iv sqrt_i(const Iv& a) {
    const mpfr_prec_t p = a.prec();
    if (a.nan() || mpfr_sgn(a.hi()) < 0) return Iv(p); // NaN interval
    Iv r(p);
    if (mpfr_sgn(a.lo()) <= 0)
        mpfr_set_zero(r.lo(), 1);
    else
        mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

Iv log_i(const Iv& a) {
    const mpfr_prec_t p = a.prec();
    if (a.nan() || mpfr_sgn(a.hi()) <= 0) return Iv(p);
    Iv r(p);
    if (mpfr_sgn(a.lo()) <= 0)
        mpfr_set_inf(r.lo(), -1);
    else
        mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

Iv exp_i(const Iv& a) {
    const mpfr_prec_t p = a.prec();
    if (a.nan()) return Iv::whole(p);
    Iv r(p);
    mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

// a^e for nonnegative a and rational e.  Integer exponents go straight to
// mpfr_pow_si on endpoints (monotone for a >= 0 and e > 0; reciprocal path
// for e < 0); otherwise exp(e * log a) with full interval propagation.
// Callers guarantee a >= 0 mathematically; an enclosure whose low endpoint
// dipped below zero through rounding is intersected with the domain.
Iv pow_q(const Iv& aa, const mpq_class& e) {
    const mpfr_prec_t p = aa.prec();
    if (aa.nan() || mpfr_sgn(aa.hi()) < 0) return Iv::whole(p);
    Iv a = aa;
    if (mpfr_sgn(a.lo()) < 0) mpfr_set_zero(a.lo(), 1);
    if (e == 0) return Iv::from_si(1, p);
    if (e.get_den() == 1 && mpz_fits_slong_p(e.get_num().get_mpz_t())) {
        const long k = e.get_num().get_si();
        Iv r(p);
        if (k > 0) {
            mpfr_pow_si(r.lo(), a.lo(), k, MPFR_RNDD);
            mpfr_pow_si(r.hi(), a.hi(), k, MPFR_RNDU);
        } else {
            mpfr_pow_si(r.lo(), a.hi(), k, MPFR_RNDD);
            mpfr_pow_si(r.hi(), a.lo(), k, MPFR_RNDU);
        }
        return r;
    }
    // zero lower endpoint: the log path below would lose it, but x^e has
    // clean monotone limits there (0^e = 0 for e > 0, +infinity for e < 0)
    if (mpfr_zero_p(a.lo())) {
        Iv r(p);
        if (mpfr_zero_p(a.hi())) {
            if (e > 0) { mpfr_set_zero(r.lo(), 1); mpfr_set_zero(r.hi(), 1); }
            else       { mpfr_set_inf(r.lo(), 1);  mpfr_set_inf(r.hi(), 1); }
            return r;
        }
        Iv hp(p);
        mpfr_set(hp.lo(), a.hi(), MPFR_RNDD);
        mpfr_set(hp.hi(), a.hi(), MPFR_RNDU);
        const Iv q = exp_i(mul(log_i(hp), Iv::from_mpq(e, p)));
        if (e > 0) { mpfr_set_zero(r.lo(), 1); mpfr_set(r.hi(), q.hi(), MPFR_RNDU); }
        else       { mpfr_set(r.lo(), q.lo(), MPFR_RNDD); mpfr_set_inf(r.hi(), 1); }
        return r;
    }
    const Iv le = log_i(a);
    if (le.nan()) return Iv::whole(p);
    return exp_i(mul(le, Iv::from_mpq(e, p)));
}

Iv min_i(const Iv& a, const Iv& b) {
    Iv r(pmax(a, b));
    if (a.nan() || b.nan()) return Iv::whole(r.prec());
    mpfr_min(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

Iv max_i(const Iv& a, const Iv& b) {
    Iv r(pmax(a, b));
    if (a.nan() || b.nan()) return Iv::whole(r.prec());
    mpfr_max(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

Iv hull_i(const Iv& a, const Iv& b) {
    Iv r(pmax(a, b));
    if (a.nan() || b.nan()) return Iv::whole(r.prec());
    mpfr_min(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

} // namespace weakadm
