#include "weakadm/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>

#include "weakadm/errors.hpp"

namespace weakadm {

// ----------------------------------------------------------------------
// moebius sieve
// ----------------------------------------------------------------------

std::vector<signed char> moebius_sieve(long long n) {
    if (n < 1) throw structural_error("moebius_sieve: n must be >= 1");
    if (n > 100'000'000) throw budget_error("moebius_sieve: n too large");
    std::vector<signed char> mu((size_t)n + 1, 0);
    std::vector<bool> composite((size_t)n + 1, false);
    std::vector<long long> primes;
    mu[1] = 1;
    for (long long k = 2; k <= n; ++k) {
        if (!composite[(size_t)k]) {
            primes.push_back(k);
            mu[(size_t)k] = -1;
        }
        for (long long p : primes) {
            if (k * p > n) break;
            composite[(size_t)(k * p)] = true;
            if (k % p == 0) {
                mu[(size_t)(k * p)] = 0;
                break;
            }
            mu[(size_t)(k * p)] = (signed char)-mu[(size_t)k];
        }
    }
    return mu;
}

// ----------------------------------------------------------------------
// divisor envelope
// ----------------------------------------------------------------------

DivisorEnvelope::DivisorEnvelope(long long limit) : limit_(limit) {
    if (limit < 1) throw structural_error("divisor envelope: limit must be >= 1");
    if (limit > 20'000'000) throw budget_error("divisor envelope: limit too large");
    std::vector<uint16_t> d((size_t)limit + 1, 0);
    for (long long i = 1; i <= limit; ++i)
        for (long long j = i; j <= limit; j += i) ++d[(size_t)j];
    long long best = 0;
    for (long long k = 1; k <= limit; ++k) {
        if (d[(size_t)k] > best) {
            best = d[(size_t)k];
            records_.push_back({k, best});
        }
    }
}

long long DivisorEnvelope::at_integer(long long x) const {
    if (x < 1) return 1;
    if (x > limit_) throw structural_error("divisor envelope query beyond the sieve limit");
    // last record with k <= x
    auto it = std::upper_bound(records_.begin(), records_.end(), x,
                               [](long long v, const Record& r) { return v < r.k; });
    if (it == records_.begin()) return 1;
    return std::prev(it)->value;
}

long long DivisorEnvelope::at(const XReal& x) const {
    const mpz_class f = floor_exact(x);
    if (f < 1) return 1;
    if (!f.fits_slong_p()) throw structural_error("divisor envelope query beyond the sieve limit");
    return at_integer(f.get_si());
}

const DivisorEnvelope& divisor_envelope() {
    static const DivisorEnvelope env(10'000'000);
    return env;
}

// ----------------------------------------------------------------------
// the analytic bound with a verified crossover
// ----------------------------------------------------------------------

Iv DivisorBoundT::analytic_point(double x, mpfr_rnd_t side) const {
    // a^{log x / log log x} as an enclosure; side picks which endpoint the
    // caller cares about, the enclosure itself stays two-sided
    (void)side;
    const mpfr_prec_t p = 96;
    const Iv xa = Iv::from_d(x, p);
    const Iv la = log_i(Iv::from_d(a_, p));
    const Iv lx = log_i(xa);
    const Iv llx = log_i(lx);
    return exp_i(div(mul(la, lx), llx));
}

DivisorBoundT::DivisorBoundT(double a, const DivisorEnvelope& env) : a_(a), env_(&env) {
    if (!(a > 2.0)) throw structural_error("divisor bound: parameter a must exceed 2");

    // b = least integer >= 16 > e^e such that the analytic form certifiably
    // dominates the envelope on [b, limit]; searched block by block between
    // envelope records (the analytic form is increasing there).
    long long b = 16;
    const auto& rec = env.records();
    for (size_t i = 0; i < rec.size(); ++i) {
        const long long v = rec[i].value;
        long long lo = std::max(rec[i].k, (long long)16);
        long long hi = (i + 1 < rec.size() ? rec[i + 1].k - 1 : env.limit());
        if (lo > hi) continue;
        // least k in [lo, hi] with analytic_lo(k) >= v (monotone in k)
        auto dominated = [&](long long k) { return analytic_point((double)k, MPFR_RNDD).dlo() >= (double)v; };
        if (!dominated(hi)) {
            b = std::max(b, hi + 1);
            continue;
        }
        while (lo < hi) {
            const long long mid = lo + (hi - lo) / 2;
            if (dominated(mid)) hi = mid;
            else lo = mid + 1;
        }
        b = std::max(b, lo);
    }
    b_ = b;
    cap_ = env.at_integer(std::min(b_ - 1, env.limit()));
}

Iv DivisorBoundT::value(const Iv& x) const {
    const mpfr_prec_t p = 96;
    const double xl = std::max(0.0, x.dlo());
    const double xh = x.dhi();
    if (!std::isfinite(xh)) return Iv::from_endpoints_d(1.0, std::numeric_limits<double>::infinity(), p);

    auto lower_at = [&](double v) -> double {
        if (v < (double)b_) {
            const long long f = (long long)std::floor(std::min(v, (double)env_->limit()));
            return (double)(f < 1 ? 1 : env_->at_integer(f));
        }
        return std::max((double)cap_, analytic_point(v, MPFR_RNDD).dlo());
    };
    auto upper_at = [&](double v) -> double {
        if (v < (double)b_) {
            const long long f = (long long)std::floor(v);
            return (double)(f < 1 ? 1 : env_->at_integer(std::min(f, env_->limit())));
        }
        return std::max((double)cap_, analytic_point(v, MPFR_RNDU).dhi());
    };
    return Iv::from_endpoints_d(lower_at(xl), upper_at(xh), p);
}

double DivisorBoundT::value_hi(double x) const {
    return value(Iv::from_d(x, 96)).dhi();
}

// ----------------------------------------------------------------------
// zeta
// ----------------------------------------------------------------------

Iv zeta_certified(unsigned n, mpfr_prec_t bits) {
    if (n < 2) throw structural_error("zeta: argument must be >= 2");
    return Iv::zeta_ui(n, bits);
}

Iv zeta_partial_sum(unsigned n) {
    if (n < 2) throw structural_error("zeta: argument must be >= 2");
    // remainder sum_{k>K} k^{-n} lies in [((K+1)^{1-n})/(n-1), (K^{1-n})/(n-1)];
    // pick K so the bracket is narrower than 10^{-12}
    long long K = 64;
    auto bracket_width = [&](long long k) {
        return (std::pow((double)k, 1.0 - (double)n) -
                std::pow((double)(k + 1), 1.0 - (double)n)) / ((double)n - 1.0);
    };
    while (K < 4'000'000 && bracket_width(K) > 1e-12) K *= 2;

    const mpfr_prec_t p = 128;
    Iv sum = Iv::from_si(0, p);
    for (long long k = 1; k <= K; ++k) {
        Iv t = div(Iv::from_si(1, p), pow_q(Iv::from_si((long)k, p), mpq_class((long)n)));
        sum = add(sum, t);
    }
    const Iv nm1 = Iv::from_si((long)n - 1, p);
    const Iv rem_hi = div(Iv::from_si(1, p),
                          mul(pow_q(Iv::from_si((long)K, p), mpq_class((long)n - 1)), nm1));
    const Iv rem_lo = div(Iv::from_si(1, p),
                          mul(pow_q(Iv::from_si((long)K + 1, p), mpq_class((long)n - 1)), nm1));
    return add(sum, hull_i(rem_lo, rem_hi));
}

} // namespace weakadm
