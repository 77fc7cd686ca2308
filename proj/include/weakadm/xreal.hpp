#pragma once

// XReal: an exact real number represented as an expression DAG.
//
// A value is either an exact rational (mpq), an opaque generator (a function
// that returns a certified MPFR enclosure at any requested precision --
// continued fractions, pi, lattice minima, ...), or an arithmetic node over
// other XReals.  Comparisons evaluate both sides at escalating precision
// (64, 128, 256, ... bits up to a ceiling) until the order is certified;
// rational-vs-rational comparisons are exact.  If the ceiling is reached
// without a decision, compare() throws precision_error rather than guessing.
//
// Rationality is propagated through +,-,*,/ and integer powers, and sqrt of
// a perfect-square rational collapses back to a rational, so quantities that
// are "secretly exact" (determinants of rational bases, gauge ratios x/x,
// products with 0 or 1) stay exact and compare in O(1).

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "weakadm/errors.hpp"
#include "weakadm/interval.hpp"

namespace weakadm {

// Precision ceiling used by compare()/sign() when no explicit limit is given.
mpfr_prec_t default_max_bits();
void set_default_max_bits(mpfr_prec_t bits);

class XReal {
public:
    XReal();                                // exact 0
    XReal(int v);
    XReal(long v);
    XReal(const mpz_class& z);
    XReal(const mpq_class& q);

    static XReal pi();
    // Opaque certified value: fn(bits) must return an enclosure that is
    // valid at every precision and (weakly) narrows as bits grows.
    static XReal generator(std::string desc, std::function<Iv(mpfr_prec_t)> fn);

    bool is_rational() const;
    const mpq_class& rat() const;           // only when is_rational()

    Iv eval(mpfr_prec_t bits) const;
    DIv fast() const;                       // cached 64-bit enclosure
    double approx() const;                  // midpoint of fast(), display only
    std::string decimal(int digits) const;  // deterministic decimal rendering
    std::string describe() const;           // rational string / generator tag / "<expr>"

    bool same_node(const XReal& o) const { return n_ == o.n_; }

    XReal operator-() const;
    friend XReal operator+(const XReal& a, const XReal& b);
    friend XReal operator-(const XReal& a, const XReal& b);
    friend XReal operator*(const XReal& a, const XReal& b);
    friend XReal operator/(const XReal& a, const XReal& b);
    friend XReal abs(const XReal& a);
    friend XReal sqrt(const XReal& a);            // a >= 0
    friend XReal pow_i(const XReal& a, long k);   // a >= 0 unless a rational
    friend XReal pow_q(const XReal& a, const mpq_class& e);  // a >= 0

    struct node;
    explicit XReal(std::shared_ptr<const node> n) : n_(std::move(n)) {}
    const std::shared_ptr<const node>& raw() const { return n_; }

private:
    std::shared_ptr<const node> n_;
};

// Certified three-way comparison: -1, 0, +1.  0 is returned only when
// equality is exact (shared node, equal rationals, or identical point
// enclosures).  Throws precision_error if undecidable within max_bits
// (0 = use default_max_bits()).
int compare(const XReal& a, const XReal& b, mpfr_prec_t max_bits = 0);
std::optional<int> try_compare(const XReal& a, const XReal& b, mpfr_prec_t max_bits = 0);
int sign(const XReal& a, mpfr_prec_t max_bits = 0);

XReal min(const XReal& a, const XReal& b, mpfr_prec_t max_bits = 0);
XReal max(const XReal& a, const XReal& b, mpfr_prec_t max_bits = 0);

// Euclidean norm-squared and norm of a coordinate vector.
XReal norm2(const std::vector<XReal>& x);
XReal norm(const std::vector<XReal>& x);

// floor/ceil as exact integers.  Rational values are exact; other values
// escalate until the enclosure pins the integer part down, and throw
// precision_error if the value cannot be separated from an integer within
// max_bits (genuinely integral irrational-looking trees stay undecidable).
mpz_class floor_exact(const XReal& x, mpfr_prec_t max_bits = 0);
mpz_class ceil_exact(const XReal& x, mpfr_prec_t max_bits = 0);

// Volume of the unit euclidean ball in dimension m, as an exact
// rational multiple of an integer power of pi.
XReal unit_ball_volume(int m);

} // namespace weakadm
