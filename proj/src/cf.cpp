#include "weakadm/cf.hpp"

namespace weakadm {

namespace {

// floor(ln n) for an integer n >= 1, decided by escalating precision.
// ln n is irrational for n >= 2, so the floor is always decidable.
mpz_class floor_log_natural(const mpz_class& n) {
    if (n <= 0) throw structural_error("floor_log_natural: need n >= 1");
    if (n == 1) return 0;
    for (mpfr_prec_t p = 64; p <= 1 << 20; p *= 2) {
        const Iv l = log_i(Iv::from_mpz(n, p));
        mpz_class f;
        if (l.floor_unique(f)) return f;
    }
    throw precision_error("floor(log n) did not stabilize");
}

} // namespace

std::shared_ptr<const CFNumber> CFNumber::from_rule(
    std::string desc, std::function<mpz_class(size_t, const std::vector<mpz_class>&)> rule) {
    auto cf = std::shared_ptr<CFNumber>(new CFNumber());
    cf->desc_ = std::move(desc);
    cf->rule_ = std::move(rule);
    return cf;
}

std::shared_ptr<const CFNumber> CFNumber::from_quotients(std::string desc,
                                                         std::vector<mpz_class> quotients) {
    if (quotients.empty()) throw structural_error("continued fraction needs quotients");
    for (size_t j = 1; j < quotients.size(); ++j)
        if (quotients[j] < 1) throw structural_error("continued fraction quotients must be >= 1");
    auto cf = std::shared_ptr<CFNumber>(new CFNumber());
    cf->desc_ = std::move(desc);
    cf->fixed_ = std::move(quotients);
    return cf;
}

std::shared_ptr<const CFNumber> CFNumber::golden() {
    static const std::shared_ptr<const CFNumber> g = from_rule(
        "golden", [](size_t, const std::vector<mpz_class>&) { return mpz_class(1); });
    return g;
}

std::shared_ptr<const CFNumber> CFNumber::loggrowth() {
    static const std::shared_ptr<const CFNumber> g = from_rule(
        "loggrowth", [](size_t j, const std::vector<mpz_class>& qs) {
            if (j <= 1) return mpz_class(1);
            // a_{j} = floor(log q_{j-1}) + 1
            return mpz_class(floor_log_natural(qs[j - 1]) + 1);
        });
    return g;
}

void CFNumber::extend(size_t upto) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (a_.size() <= upto) {
        const size_t j = a_.size();
        mpz_class aj;
        if (!fixed_.empty()) {
            if (j >= fixed_.size())
                throw structural_error("continued fraction: expansion exhausted at index " +
                                       std::to_string(j));
            aj = fixed_[j];
        } else {
            aj = rule_(j, q_);
            if (j >= 1 && aj < 1)
                throw structural_error("continued fraction rule produced quotient < 1");
        }
        mpz_class pj, qj;
        if (j == 0) {
            pj = aj;
            qj = 1;
        } else if (j == 1) {
            pj = aj * p_[0] + 1;
            qj = aj;
        } else {
            pj = aj * p_[j - 1] + p_[j - 2];
            qj = aj * q_[j - 1] + q_[j - 2];
        }
        a_.push_back(std::move(aj));
        p_.push_back(std::move(pj));
        q_.push_back(std::move(qj));
    }
}

mpz_class CFNumber::quotient(size_t j) const {
    extend(j);
    std::lock_guard<std::mutex> lock(mu_);
    return a_[j];
}

mpz_class CFNumber::p(size_t j) const {
    extend(j);
    std::lock_guard<std::mutex> lock(mu_);
    return p_[j];
}

mpz_class CFNumber::q(size_t j) const {
    extend(j);
    std::lock_guard<std::mutex> lock(mu_);
    return q_[j];
}

XReal CFNumber::value() const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (value_made_) return value_;
    }
    XReal v;
    if (!fixed_.empty()) {
        // finite expansion: the value is exactly the last convergent
        const size_t last = fixed_.size() - 1;
        extend(last);
        std::lock_guard<std::mutex> lock(mu_);
        v = XReal(mpq_class(p_[last], q_[last]));
        value_ = v;
        value_made_ = true;
        return v;
    }
    auto self = shared_from_this();
    v = XReal::generator("cf:" + desc_, [self](mpfr_prec_t bits) {
        // find consecutive convergents with q_j q_{j+1} >= 2^{bits+2};
        // alpha lies strictly between them
        mpz_class target = 1;
        mpz_mul_2exp(target.get_mpz_t(), target.get_mpz_t(), (mp_bitcnt_t)bits + 2);
        size_t j = 1;
        for (;;) {
            self->extend(j + 1);
            std::lock_guard<std::mutex> lock(self->mu_);
            if (self->q_[j] * self->q_[j + 1] >= target) {
                mpq_class lo(self->p_[j], self->q_[j]);
                mpq_class hi(self->p_[j + 1], self->q_[j + 1]);
                lo.canonicalize();
                hi.canonicalize();
                if (lo > hi) std::swap(lo, hi);
                return hull_i(Iv::from_mpq(lo, bits), Iv::from_mpq(hi, bits));
            }
            ++j;
        }
    });
    std::lock_guard<std::mutex> lock(mu_);
    if (!value_made_) {
        value_ = v;
        value_made_ = true;
    }
    return value_;
}

XReal CFNumber::qalpha_minus_p(size_t j) const {
    return XReal(q(j)) * value() - XReal(p(j));
}

size_t CFNumber::index_with_denominator_at_least(const mpz_class& bound) const {
    size_t j = 0;
    while (q(j) < bound) ++j;
    return j;
}

} // namespace weakadm
