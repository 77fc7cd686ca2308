#pragma once

// Continued fractions alpha = [a0; a1, a2, ...] with integer quotients,
// extended on demand.  Convergents p_j/q_j obey the usual recurrences and
// sandwich alpha, which yields certified enclosures at any precision:
// |alpha - p_j/q_j| < 1/(q_j q_{j+1}).
//
// Two built-in rules:
//   golden()     all quotients 1 (the golden mean, badly approximable),
//   loggrowth()  a_0 = a_1 = 1 and a_{j+1} = floor(log q_j) + 1, whose
//                slowly growing quotients make the associated planar lattice
//                weakly admissible but not admissible.
// Arbitrary finite or rule-based quotient sequences are supported too.

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weakadm/errors.hpp"
#include "weakadm/xreal.hpp"

namespace weakadm {

class CFNumber : public std::enable_shared_from_this<CFNumber> {
public:
    // rule(j, q) must return a_j >= 1 given all previous denominators
    // q = (q_0, ..., q_{j-1}); a_0 >= 0 is allowed.
    static std::shared_ptr<const CFNumber> from_rule(
        std::string desc, std::function<mpz_class(size_t, const std::vector<mpz_class>&)> rule);
    static std::shared_ptr<const CFNumber> from_quotients(std::string desc,
                                                          std::vector<mpz_class> quotients);
    static std::shared_ptr<const CFNumber> golden();
    static std::shared_ptr<const CFNumber> loggrowth();

    const std::string& desc() const { return desc_; }

    mpz_class quotient(size_t j) const;
    mpz_class p(size_t j) const;     // convergent numerators
    mpz_class q(size_t j) const;     // convergent denominators (nondecreasing)

    // The value alpha as a certified XReal (generator node, cached).
    XReal value() const;

    // q_j * alpha - p_j as an exact expression; its absolute value is the
    // distance from q_j alpha to the nearest integer once j >= 1.
    XReal qalpha_minus_p(size_t j) const;

    // smallest j with q_j >= bound (extends the expansion as needed)
    size_t index_with_denominator_at_least(const mpz_class& bound) const;

private:
    CFNumber() = default;
    void extend(size_t upto) const;      // callers hold no lock

    std::string desc_;
    std::function<mpz_class(size_t, const std::vector<mpz_class>&)> rule_;
    std::vector<mpz_class> fixed_;       // when built from an explicit list
    mutable std::mutex mu_;
    mutable std::vector<mpz_class> a_, p_, q_;
    mutable XReal value_;
    mutable bool value_made_ = false;
};

} // namespace weakadm
