#include "weakadm/xreal.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <vector>

namespace weakadm {

// ----------------------------------------------------------------------
// precision ceiling
// ----------------------------------------------------------------------

namespace {
std::atomic<long> g_max_bits{512};
}

mpfr_prec_t default_max_bits() { return (mpfr_prec_t)g_max_bits.load(); }
void set_default_max_bits(mpfr_prec_t bits) {
    if (bits < 64) bits = 64;
    g_max_bits.store((long)bits);
}

// ----------------------------------------------------------------------
// node
// ----------------------------------------------------------------------

struct XReal::node {
    enum class op : unsigned char { rat, gen, add, sub, mul, div, neg, absv, sqrtv, powq };

    op k = op::rat;
    mpq_class q;                                  // rat payload, or powq exponent
    std::function<Iv(mpfr_prec_t)> gen;
    std::string gdesc;
    std::shared_ptr<const node> a, b;

    mutable std::once_flag fast_once;
    mutable DIv fast_cache = DIv::whole();

    Iv eval(mpfr_prec_t p) const;
    const DIv& fast() const {
        std::call_once(fast_once, [this] { fast_cache = eval(64).hull_d(); });
        return fast_cache;
    }
};

Iv XReal::node::eval(mpfr_prec_t p) const {
    switch (k) {
        case op::rat:   return Iv::from_mpq(q, p);
        case op::gen:   return gen(p);
        case op::add:   return add(a->eval(p), b->eval(p));
        case op::sub:   return sub(a->eval(p), b->eval(p));
        case op::mul:   return mul(a->eval(p), b->eval(p));
        case op::div:   return div(a->eval(p), b->eval(p));
        case op::neg:   return neg(a->eval(p));
        case op::absv:  return abs_i(a->eval(p));
        case op::sqrtv: return sqrt_i(a->eval(p));
        case op::powq:  return pow_q(a->eval(p), q);
    }
    return Iv::whole(p);
}

namespace {

using node = XReal::node;
using nptr = std::shared_ptr<const node>;

nptr make_rat(mpq_class q) {
    auto n = std::make_shared<node>();
    n->k = node::op::rat;
    n->q = std::move(q);
    return n;
}

nptr make_op(node::op k, nptr a, nptr b = nullptr, mpq_class q = mpq_class(0)) {
    auto n = std::make_shared<node>();
    n->k = k;
    n->a = std::move(a);
    n->b = std::move(b);
    n->q = std::move(q);
    return n;
}

bool is_rat(const nptr& n) { return n && n->k == node::op::rat; }
bool is_rat_val(const nptr& n, long v) { return is_rat(n) && n->q == v; }

const nptr& zero_node() {
    static const nptr z = make_rat(mpq_class(0));
    return z;
}
const nptr& one_node() {
    static const nptr o = make_rat(mpq_class(1));
    return o;
}

} // namespace

// ----------------------------------------------------------------------
// construction
// ----------------------------------------------------------------------

XReal::XReal() : n_(zero_node()) {}
XReal::XReal(int v) : n_(v == 0 ? zero_node() : (v == 1 ? one_node() : make_rat(mpq_class(v)))) {}
XReal::XReal(long v) : n_(v == 0 ? zero_node() : (v == 1 ? one_node() : make_rat(mpq_class(v)))) {}
XReal::XReal(const mpz_class& z) : n_(make_rat(mpq_class(z))) {}
XReal::XReal(const mpq_class& q) : n_(make_rat(q)) {}

XReal XReal::pi() {
    static const XReal p = XReal::generator("pi", [](mpfr_prec_t b) { return Iv::pi(b); });
    return p;
}

XReal XReal::generator(std::string desc, std::function<Iv(mpfr_prec_t)> fn) {
    auto n = std::make_shared<node>();
    n->k = node::op::gen;
    n->gen = std::move(fn);
    n->gdesc = std::move(desc);
    return XReal(std::move(n));
}

bool XReal::is_rational() const { return is_rat(n_); }
const mpq_class& XReal::rat() const {
    if (!is_rational()) throw structural_error("XReal::rat on irrational value");
    return n_->q;
}

Iv XReal::eval(mpfr_prec_t bits) const { return n_->eval(bits); }
DIv XReal::fast() const { return n_->fast(); }
double XReal::approx() const { return fast().mid(); }

std::string XReal::decimal(int digits) const {
    if (is_rational() && n_->q.get_den() == 1) return n_->q.get_num().get_str();
    const mpfr_prec_t bits = (mpfr_prec_t)(digits * 4 + 32);
    return eval(bits).str(digits);
}

std::string XReal::describe() const {
    if (is_rational()) return n_->q.get_str();
    if (n_->k == node::op::gen) return n_->gdesc;
    return "<expr>";
}

// ----------------------------------------------------------------------
// arithmetic with rational fast paths
// ----------------------------------------------------------------------

XReal XReal::operator-() const {
    if (is_rational()) return XReal(mpq_class(-n_->q));
    if (n_->k == node::op::neg) return XReal(n_->a);    // -(-x) = x
    return XReal(make_op(node::op::neg, n_));
}

XReal operator+(const XReal& a, const XReal& b) {
    if (is_rat_val(a.n_, 0)) return b;
    if (is_rat_val(b.n_, 0)) return a;
    if (is_rat(a.n_) && is_rat(b.n_)) return XReal(mpq_class(a.n_->q + b.n_->q));
    return XReal(make_op(node::op::add, a.n_, b.n_));
}

XReal operator-(const XReal& a, const XReal& b) {
    if (a.n_ == b.n_) return XReal();
    if (is_rat_val(b.n_, 0)) return a;
    if (is_rat_val(a.n_, 0)) return -b;
    if (is_rat(a.n_) && is_rat(b.n_)) return XReal(mpq_class(a.n_->q - b.n_->q));
    return XReal(make_op(node::op::sub, a.n_, b.n_));
}

XReal operator*(const XReal& a, const XReal& b) {
    if (is_rat_val(a.n_, 0) || is_rat_val(b.n_, 0)) return XReal();
    if (is_rat_val(a.n_, 1)) return b;
    if (is_rat_val(b.n_, 1)) return a;
    if (is_rat(a.n_) && is_rat(b.n_)) return XReal(mpq_class(a.n_->q * b.n_->q));
    // hoist negations out of products so a sign never blocks the merges below
    if (a.n_->k == node::op::neg) return -(XReal(a.n_->a) * b);
    if (b.n_->k == node::op::neg) return -(a * XReal(b.n_->a));
    // Squaring a shared node: collapse sqrt(x)*sqrt(x) = x outright (sqrt
    // requires x >= 0) and distribute the square over products, quotients,
    // negations, and powers so the collapse can fire on the factors.  This
    // keeps squared euclidean radii and squared geometric means exact, so
    // boundary ties stay decidable.
    if (a.n_ == b.n_) {
        switch (a.n_->k) {
            case node::op::sqrtv:
                return XReal(a.n_->a);
            case node::op::neg:
            case node::op::absv: {
                const XReal c(a.n_->a);
                return c * c;
            }
            case node::op::mul: {
                const XReal u(a.n_->a), v(a.n_->b);
                return (u * u) * (v * v);
            }
            case node::op::div: {
                const XReal u(a.n_->a), v(a.n_->b);
                return (u * u) / (v * v);
            }
            case node::op::powq:
                return pow_q(XReal(a.n_->a), mpq_class(2) * a.n_->q);
            default:
                break;
        }
    }
    // sqrt(p) * sqrt(q) = sqrt(p q) for rational radicands: merging keeps
    // exact products of square roots (geometric means, reach radii) decidable
    if (a.n_->k == node::op::sqrtv && b.n_->k == node::op::sqrtv &&
        is_rat(a.n_->a) && is_rat(b.n_->a))
        return sqrt(XReal(mpq_class(a.n_->a->q * b.n_->a->q)));
    // powers of one shared base combine exponents: x^p x^q = x^{p+q}; powers
    // of rational bases (always > 0) merge by value: p^e q^e = (pq)^e
    if (a.n_->k == node::op::powq && b.n_->k == node::op::powq) {
        if (a.n_->a == b.n_->a)
            return pow_q(XReal(a.n_->a), mpq_class(a.n_->q + b.n_->q));
        if (a.n_->q == b.n_->q && is_rat(a.n_->a) && is_rat(b.n_->a))
            return pow_q(XReal(mpq_class(a.n_->a->q * b.n_->a->q)), mpq_class(a.n_->q));
    }
    // fold rational factors in as well: r sqrt(q) = sign(r) sqrt(r^2 q), the
    // canonical form of a quadratic surd
    if (is_rat(a.n_) && b.n_->k == node::op::sqrtv && is_rat(b.n_->a)) {
        const XReal s = sqrt(XReal(mpq_class(a.n_->q * a.n_->q * b.n_->a->q)));
        return a.n_->q < 0 ? -s : s;
    }
    if (is_rat(b.n_) && a.n_->k == node::op::sqrtv && is_rat(a.n_->a)) {
        const XReal s = sqrt(XReal(mpq_class(b.n_->q * b.n_->q * a.n_->a->q)));
        return b.n_->q < 0 ? -s : s;
    }
    return XReal(make_op(node::op::mul, a.n_, b.n_));
}

XReal operator/(const XReal& a, const XReal& b) {
    if (is_rat_val(b.n_, 0)) throw structural_error("XReal division by exact zero");
    if (a.n_ == b.n_) return XReal(1);          // x/x = 1 (x certified nonzero by caller)
    if (is_rat_val(a.n_, 0)) return XReal();
    if (is_rat_val(b.n_, 1)) return a;
    if (is_rat(a.n_) && is_rat(b.n_)) return XReal(mpq_class(a.n_->q / b.n_->q));
    // hoist negations, as in operator*
    if (a.n_->k == node::op::neg) return -(XReal(a.n_->a) / b);
    if (b.n_->k == node::op::neg) return -(a / XReal(b.n_->a));
    // power quotients, mirroring the operator* merges
    if (a.n_->k == node::op::powq && b.n_->k == node::op::powq) {
        if (a.n_->a == b.n_->a)
            return pow_q(XReal(a.n_->a), mpq_class(a.n_->q - b.n_->q));
        if (a.n_->q == b.n_->q && is_rat(a.n_->a) && is_rat(b.n_->a))
            return pow_q(XReal(mpq_class(a.n_->a->q / b.n_->a->q)), mpq_class(a.n_->q));
    }
    // sqrt(p) / sqrt(q) = sqrt(p / q) for rational radicands (q > 0, else the
    // sqrt would have collapsed to the rational 0 already)
    if (a.n_->k == node::op::sqrtv && b.n_->k == node::op::sqrtv &&
        is_rat(a.n_->a) && is_rat(b.n_->a))
        return sqrt(XReal(mpq_class(a.n_->a->q / b.n_->a->q)));
    // quotients with one rational side stay in surd form too
    if (a.n_->k == node::op::sqrtv && is_rat(a.n_->a) && is_rat(b.n_)) {
        const XReal s = sqrt(XReal(mpq_class(a.n_->a->q / (b.n_->q * b.n_->q))));
        return b.n_->q < 0 ? -s : s;
    }
    if (is_rat(a.n_) && b.n_->k == node::op::sqrtv && is_rat(b.n_->a)) {
        const XReal s = sqrt(XReal(mpq_class(a.n_->q * a.n_->q / b.n_->a->q)));
        return a.n_->q < 0 ? -s : s;
    }
    return XReal(make_op(node::op::div, a.n_, b.n_));
}

XReal abs(const XReal& a) {
    if (a.is_rational()) return XReal(mpq_class(::abs(a.n_->q)));
    if (a.n_->k == node::op::absv || a.n_->k == node::op::sqrtv) return a;
    if (a.n_->k == node::op::neg) return abs(XReal(a.n_->a));
    return XReal(make_op(node::op::absv, a.n_));
}

namespace {
// If q = (p/r)^2 with p/r rational, recover p/r.
bool rational_sqrt(const mpq_class& q, mpq_class& out) {
    if (q < 0) return false;
    mpz_class sn, sd;
    if (mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
        mpz_perfect_square_p(q.get_den().get_mpz_t())) {
        mpz_sqrt(sn.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), q.get_den().get_mpz_t());
        out = mpq_class(sn, sd);
        return true;
    }
    return false;
}
} // namespace

XReal sqrt(const XReal& a) {
    if (a.is_rational()) {
        if (a.n_->q < 0) throw structural_error("XReal sqrt of negative rational");
        mpq_class r;
        if (rational_sqrt(a.n_->q, r)) return XReal(r);
    }
    return XReal(make_op(node::op::sqrtv, a.n_));
}

XReal pow_i(const XReal& a, long k) {
    if (k == 0) return XReal(1);
    if (k == 1) return a;
    if (a.is_rational()) {
        mpq_class r;
        mpz_pow_ui(r.get_num().get_mpz_t(), a.n_->q.get_num().get_mpz_t(), (unsigned long)(k < 0 ? -k : k));
        mpz_pow_ui(r.get_den().get_mpz_t(), a.n_->q.get_den().get_mpz_t(), (unsigned long)(k < 0 ? -k : k));
        r.canonicalize();
        if (k < 0) {
            if (r == 0) throw structural_error("XReal pow of zero with negative exponent");
            r = 1 / r;
        }
        return XReal(r);
    }
    // small exponents: repeated squaring through operator*, so that algebraic
    // collapses (sqrt(x)*sqrt(x) = x) can simplify the tree
    long e = k < 0 ? -k : k;
    if (e <= 16) {
        XReal r(1), base = a;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return k < 0 ? XReal(1) / r : r;
    }
    return XReal(make_op(node::op::powq, a.n_, nullptr, mpq_class(k)));
}

XReal pow_q(const XReal& a, const mpq_class& e) {
    if (e.get_den() == 1 && mpz_fits_slong_p(e.get_num().get_mpz_t()))
        return pow_i(a, e.get_num().get_si());
    if (e.get_den() == 2) {
        // a^(p/2) = sqrt(a)^p keeps perfect squares exact
        return pow_i(sqrt(a), e.get_num().get_si());
    }
    if (a.is_rational()) {
        // exact when the rational is a perfect e.den-th power
        const mpq_class& q = a.n_->q;
        if (q < 0) throw structural_error("XReal pow_q of negative rational");
        if (q == 0) {
            if (e <= 0) throw structural_error("XReal pow_q of zero with nonpositive exponent");
            return XReal();
        }
        mpz_class rn, rd;
        const unsigned long d = e.get_den().get_ui();
        if (q != 0 &&
            mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), d) != 0 &&
            mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), d) != 0) {
            mpq_class root(rn, rd);
            root.canonicalize();
            return pow_i(XReal(root), e.get_num().get_si());
        }
    }
    return XReal(make_op(node::op::powq, a.n_, nullptr, e));
}

// ----------------------------------------------------------------------
// comparison ladder
// ----------------------------------------------------------------------

namespace {
// Equal expression trees denote equal values even when nodes are not shared.
// Generators are opaque, so they only match on pointer identity.
bool structurally_equal(const node* a, const node* b) {
    if (a == b) return true;
    if (!a || !b || a->k != b->k) return false;
    switch (a->k) {
        case node::op::rat:  return a->q == b->q;
        case node::op::gen:  return false;
        case node::op::powq:
            if (a->q != b->q) return false;
            return structurally_equal(a->a.get(), b->a.get());
        default:
            return structurally_equal(a->a.get(), b->a.get()) &&
                   structurally_equal(a->b.get(), b->b.get());
    }
}
} // namespace

std::optional<int> try_compare(const XReal& a, const XReal& b, mpfr_prec_t max_bits) {
    if (max_bits == 0) max_bits = default_max_bits();
    if (a.same_node(b)) return 0;
    if (a.is_rational() && b.is_rational()) return cmp(a.rat(), b.rat());
    if (structurally_equal(a.raw().get(), b.raw().get())) return 0;

    {
        const DIv fa = a.fast(), fb = b.fast();
        if (certainly_lt(fa, fb)) return -1;
        if (certainly_gt(fa, fb)) return 1;
    }
    for (mpfr_prec_t p = 64; p <= max_bits; p *= 2) {
        const Iv ea = a.eval(p), eb = b.eval(p);
        if (certainly_lt(ea, eb)) return -1;
        if (certainly_gt(ea, eb)) return 1;
        if (ea.is_point() && eb.is_point() && mpfr_equal_p(ea.lo(), eb.lo())) return 0;
    }
    return std::nullopt;
}

int compare(const XReal& a, const XReal& b, mpfr_prec_t max_bits) {
    const auto r = try_compare(a, b, max_bits);
    if (!r)
        throw precision_error("undecidable comparison at precision ceiling: " +
                              a.decimal(25) + " vs " + b.decimal(25));
    return *r;
}

int sign(const XReal& a, mpfr_prec_t max_bits) {
    if (a.is_rational()) return sgn(a.rat());
    return compare(a, XReal(), max_bits);
}

XReal min(const XReal& a, const XReal& b, mpfr_prec_t max_bits) {
    return compare(a, b, max_bits) <= 0 ? a : b;
}
XReal max(const XReal& a, const XReal& b, mpfr_prec_t max_bits) {
    return compare(a, b, max_bits) >= 0 ? a : b;
}

// ----------------------------------------------------------------------
// vector helpers
// ----------------------------------------------------------------------

XReal norm2(const std::vector<XReal>& x) {
    XReal s;
    for (const auto& c : x) s = s + c * c;
    return s;
}

XReal norm(const std::vector<XReal>& x) { return sqrt(norm2(x)); }

// vol B_1^m = pi^{m/2} / Gamma(m/2 + 1); split by parity so the value is an
// exact rational times an integer power of pi.
XReal unit_ball_volume(int m) {
    if (m < 1) throw structural_error("unit_ball_volume: dimension must be >= 1");
    if (m % 2 == 0) {
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), (unsigned long)(m / 2));
        mpq_class c(mpz_class(1), fact);
        c.canonicalize();
        return pow_i(XReal::pi(), m / 2) * XReal(c);
    }
    // m odd: vol = 2^{(m+1)/2} pi^{(m-1)/2} / m!!
    mpz_class dblfact;
    mpz_2fac_ui(dblfact.get_mpz_t(), (unsigned long)m);
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, (unsigned long)((m + 1) / 2));
    mpq_class c(two_pow, dblfact);
    c.canonicalize();
    return pow_i(XReal::pi(), (m - 1) / 2) * XReal(c);
}

mpz_class floor_exact(const XReal& x, mpfr_prec_t max_bits) {
    if (max_bits == 0) max_bits = default_max_bits();
    if (x.is_rational()) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), x.rat().get_num().get_mpz_t(),
                   x.rat().get_den().get_mpz_t());
        return f;
    }
    {
        const DIv d = x.fast();
        if (std::isfinite(d.lo) && std::isfinite(d.hi)) {
            const double fl = std::floor(d.lo), fh = std::floor(d.hi);
            if (fl == fh && std::abs(fl) < 4.0e15) return mpz_class((long)fl);
        }
    }
    for (mpfr_prec_t p = 64; p <= max_bits; p *= 2) {
        mpz_class f;
        if (x.eval(p).floor_unique(f)) return f;
    }
    throw precision_error("floor undecidable at the precision ceiling");
}

mpz_class ceil_exact(const XReal& x, mpfr_prec_t max_bits) {
    return -floor_exact(-x, max_bits);
}

} // namespace weakadm
