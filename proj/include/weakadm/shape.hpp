#pragma once

// Block shapes S = (m, beta) for R^N = R^{m_1} x ... x R^{m_n} together with
// the excluded-index set I.  The weighted multiplicative form is
//
//     Nm_beta(x) = prod_i |x_i|^{beta_i},        t = sum_i beta_i,
//
// with |x_i| the euclidean norm of the i-th block, and
//
//     C_I = { x in R^N : x_i = 0 for all i in I }.
//
// Conventions: I = {1..n} (all blocks) gives C = {0}, the classical case;
// I = {} gives C = R^N (every point excluded from the nu-infimum, nu = inf
// over the empty set = +infinity).  Indices in I are stored 0-based.

#include <vector>

#include <gmpxx.h>

#include "weakadm/errors.hpp"
#include "weakadm/xreal.hpp"

namespace weakadm {

struct Shape {
    std::vector<int> m;             // block dimensions, all >= 1, N = sum > 1
    std::vector<mpq_class> beta;    // positive weights
    std::vector<char> in_I;         // in_I[i] != 0 iff block i belongs to I

    int blocks() const { return (int)m.size(); }
    int dim() const;                // N
    mpq_class t() const;            // sum of beta
    int offset(int block) const;    // first coordinate index of the block
    int block_of(int coord) const;
    bool subspace_full() const;     // I = {1..n}  (C = {0})
    bool subspace_empty() const;    // I = {}      (C = R^N)
    std::vector<int> subspace_indices() const;

    // n blocks of dimension m_i = 1, weight 1, I as given.
    static Shape make(std::vector<int> m, std::vector<mpq_class> beta,
                      const std::vector<int>& I);
    static Shape cube(int N);                                   // I full: C = {0}
    static Shape cube_with_subspace(int N, const std::vector<int>& I);
};

// Nm_beta(x) for a coordinate vector of length N.  Exactness: blocks of
// dimension 1 use |x|^beta (rational-preserving for integer beta); larger
// blocks use (|x|^2)^{beta/2} so even beta stays rational too.
XReal nm_beta(const Shape& s, const std::vector<XReal>& x);

// Euclidean norm^2 of block i of x.
XReal block_norm2(const Shape& s, const std::vector<XReal>& x, int block);

// Is x in C_I?  Exact for rational coordinates; escalates otherwise and
// throws precision_error when a block norm is undecidably close to zero.
bool in_subspace(const Shape& s, const std::vector<XReal>& x,
                 mpfr_prec_t max_bits = 0);

} // namespace weakadm
