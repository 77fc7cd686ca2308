#include "weakadm/shape.hpp"

namespace weakadm {

int Shape::dim() const {
    int n = 0;
    for (int mi : m) n += mi;
    return n;
}

mpq_class Shape::t() const {
    mpq_class s = 0;
    for (const auto& b : beta) s += b;
    return s;
}

int Shape::offset(int block) const {
    int o = 0;
    for (int i = 0; i < block; ++i) o += m[i];
    return o;
}

int Shape::block_of(int coord) const {
    int o = 0;
    for (int i = 0; i < blocks(); ++i) {
        o += m[i];
        if (coord < o) return i;
    }
    throw structural_error("coordinate index out of range");
}

bool Shape::subspace_full() const {
    for (char c : in_I)
        if (!c) return false;
    return true;
}

bool Shape::subspace_empty() const {
    for (char c : in_I)
        if (c) return false;
    return true;
}

std::vector<int> Shape::subspace_indices() const {
    std::vector<int> r;
    for (int i = 0; i < blocks(); ++i)
        if (in_I[i]) r.push_back(i);
    return r;
}

Shape Shape::make(std::vector<int> m, std::vector<mpq_class> beta,
                  const std::vector<int>& I) {
    if (m.empty() || m.size() != beta.size())
        throw structural_error("shape: m and beta must be nonempty and equal length");
    int N = 0;
    for (int mi : m) {
        if (mi < 1) throw structural_error("shape: block dimensions must be >= 1");
        N += mi;
    }
    if (N <= 1) throw structural_error("shape: total dimension must exceed 1");
    for (const auto& b : beta)
        if (b <= 0) throw structural_error("shape: weights must be positive");
    Shape s;
    s.m = std::move(m);
    s.beta = std::move(beta);
    s.in_I.assign(s.m.size(), 0);
    for (int i : I) {
        if (i < 0 || i >= s.blocks()) throw structural_error("shape: subspace index out of range");
        if (s.in_I[i]) throw structural_error("shape: duplicate subspace index");
        s.in_I[i] = 1;
    }
    return s;
}

Shape Shape::cube(int N) {
    std::vector<int> I(N);
    for (int i = 0; i < N; ++i) I[i] = i;
    return cube_with_subspace(N, I);
}

Shape Shape::cube_with_subspace(int N, const std::vector<int>& I) {
    if (N <= 1) throw structural_error("shape: total dimension must exceed 1");
    return make(std::vector<int>(N, 1), std::vector<mpq_class>(N, mpq_class(1)), I);
}

XReal block_norm2(const Shape& s, const std::vector<XReal>& x, int block) {
    if ((int)x.size() != s.dim()) throw structural_error("block_norm2: wrong vector length");
    const int o = s.offset(block);
    XReal acc;
    for (int k = 0; k < s.m[block]; ++k) acc = acc + x[o + k] * x[o + k];
    return acc;
}

XReal nm_beta(const Shape& s, const std::vector<XReal>& x) {
    if ((int)x.size() != s.dim()) throw structural_error("nm_beta: wrong vector length");
    XReal prod(1);
    for (int i = 0; i < s.blocks(); ++i) {
        const mpq_class& b = s.beta[i];
        if (s.m[i] == 1) {
            prod = prod * pow_q(abs(x[s.offset(i)]), b);
        } else {
            prod = prod * pow_q(block_norm2(s, x, i), mpq_class(b / 2));
        }
    }
    return prod;
}

bool in_subspace(const Shape& s, const std::vector<XReal>& x, mpfr_prec_t max_bits) {
    for (int i = 0; i < s.blocks(); ++i) {
        if (!s.in_I[i]) continue;
        if (sign(block_norm2(s, x, i), max_bits) != 0) return false;
    }
    return true;
}

} // namespace weakadm
