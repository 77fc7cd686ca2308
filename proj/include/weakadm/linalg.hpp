#pragma once

// Small exact linear algebra helpers:
//   - integer kernel of a rational matrix (saturated basis, unimodular
//     column elimination),
//   - rank of integer vector families,
//   - textbook LLL on a floating-point Gram with the unimodular transform
//     tracked exactly in mpz (certification happens at the call site on the
//     exact basis).

#include <vector>

#include <gmpxx.h>

#include "weakadm/errors.hpp"

namespace weakadm {

// Basis of { z in Z^d : R z = 0 } for a rational matrix R (rows x d).
// The returned columns span the kernel as a direct summand of Z^d.
std::vector<std::vector<mpz_class>> integer_kernel(
    const std::vector<std::vector<mpq_class>>& rows, int d);

int integer_rank(std::vector<std::vector<mpz_class>> vecs);

// LLL (delta = 0.99) on basis vectors given as doubles (cols of B, each of
// length dim).  Returns U (d columns of integer coefficients) with B U
// size-reduced in the floating model.  U is exactly unimodular by
// construction; any quality guarantee must be re-checked exactly by the
// caller.  Throws structural_error if the floating Gram degenerates.
std::vector<std::vector<mpz_class>> lll_transform(
    const std::vector<std::vector<double>>& cols);

} // namespace weakadm
