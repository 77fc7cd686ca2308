#pragma once

// Divisor-function machinery for primitive-point counting and its error
// bounds: the exact running-maximum envelope of d(k) from a sieve, the
// analytic majorant a^{log x / log log x} with a verified crossover, the
// Moebius mu sieve, and certified zeta values.

#include <vector>

#include <gmpxx.h>

#include "weakadm/interval.hpp"
#include "weakadm/xreal.hpp"

namespace weakadm {

// mu(k) for k = 1..n (index 0 unused), linear sieve
std::vector<signed char> moebius_sieve(long long n);

// Record staircase of the divisor function: the places where d(k) attains a
// new maximum, up to a fixed sieve limit.
class DivisorEnvelope {
public:
    struct Record {
        long long k;
        long long value;
    };

    explicit DivisorEnvelope(long long limit);

    long long limit() const { return limit_; }
    const std::vector<Record>& records() const { return records_; }

    // T_env(x) = max{1, d(k) : 1 <= k <= x}: the least monotone upper bound
    // of the divisor function.  Exact for x <= limit; beyond that throws.
    long long at_integer(long long x) const;
    long long at(const XReal& x) const;   // certified floor, then at_integer

private:
    long long limit_;
    std::vector<Record> records_;
};

// shared instance with sieve limit 10^7, built on first use
const DivisorEnvelope& divisor_envelope();

// The divisor bound T(a, .) used in the primitive-count error term: the
// exact envelope below a verified crossover b(a), and the analytic form
// a^{log x / log log x} from b(a) on (maxed with the envelope value just
// below the crossover, so the function stays monotone).  Within the sieve
// limit T(a, k) >= d(k) is certified; beyond it the analytic form is the
// classical choice and queries are flagged heuristic.
class DivisorBoundT {
public:
    DivisorBoundT(double a, const DivisorEnvelope& env);   // requires a > 2

    double a() const { return a_; }
    long long crossover() const { return b_; }

    Iv value(const Iv& x) const;      // certified enclosure, x >= 0
    double value_hi(double x) const;  // upper endpoint, for reports
    bool heuristic(double x) const { return x > (double)env_->limit(); }

private:
    Iv analytic_point(double x, mpfr_rnd_t side) const;

    double a_;
    const DivisorEnvelope* env_;
    long long b_ = 16;      // least integer >= e^e past all envelope records
    long long cap_ = 1;     // envelope value at b - 1
};

// certified zeta(n) enclosure, n >= 2
Iv zeta_certified(unsigned n, mpfr_prec_t bits = 128);

// independent enclosure by partial sums with an integral remainder bracket
// of width below 10^{-12}
Iv zeta_partial_sum(unsigned n);

} // namespace weakadm
