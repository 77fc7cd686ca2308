#include "weakadm/lattice.hpp"

namespace weakadm {

namespace {

XReal det_rec(const std::vector<std::vector<XReal>>& cols,
              std::vector<int>& rows, int from_col) {
    const int k = (int)rows.size();
    if (k == 1) return cols[from_col][rows[0]];
    XReal acc;
    int sgn = 1;
    for (int pick = 0; pick < k; ++pick) {
        const int r = rows[pick];
        const XReal& a = cols[from_col][r];
        // skip exact-zero pivots entirely: keeps rational sparsity exact
        if (!(a.is_rational() && a.rat() == 0)) {
            std::vector<int> sub;
            sub.reserve(k - 1);
            for (int i = 0; i < k; ++i)
                if (i != pick) sub.push_back(rows[i]);
            const XReal minor = det_rec(cols, sub, from_col + 1);
            acc = sgn > 0 ? acc + a * minor : acc - a * minor;
        }
        sgn = -sgn;
    }
    return acc;
}

} // namespace

XReal det_expansion(const std::vector<std::vector<XReal>>& cols) {
    const int n = (int)cols.size();
    if (n == 0) throw structural_error("determinant of empty matrix");
    for (const auto& c : cols)
        if ((int)c.size() != n) throw structural_error("determinant: matrix not square");
    if (n > 6) throw structural_error("determinant: dimension above supported desk scale");
    std::vector<int> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = i;
    return det_rec(cols, rows, 0);
}

Lattice Lattice::make(std::vector<std::vector<XReal>> cols, std::string id) {
    Lattice L;
    const int n = (int)cols.size();
    if (n < 2) throw structural_error("lattice: dimension must be >= 2");
    for (const auto& c : cols)
        if ((int)c.size() != n) throw structural_error("lattice: basis must be square");
    L.cols_ = std::move(cols);
    L.id_ = std::move(id);
    L.det_ = det_expansion(L.cols_);
    if (sign(L.det_) == 0) throw structural_error("lattice: basis is singular");
    L.rational_ = true;
    for (const auto& c : L.cols_)
        for (const auto& e : c)
            if (!e.is_rational()) L.rational_ = false;
    return L;
}

std::vector<XReal> Lattice::point(const std::vector<long long>& z) const {
    const int n = dim();
    if ((int)z.size() != n) throw structural_error("lattice point: wrong coefficient length");
    std::vector<XReal> x(n);
    for (int j = 0; j < n; ++j) {
        if (z[j] == 0) continue;
        const XReal zj((long)z[j]);
        for (int i = 0; i < n; ++i) x[i] = x[i] + zj * cols_[j][i];
    }
    return x;
}

const std::vector<std::vector<XReal>>& Lattice::inverse() const {
    if (!inv_) {
        const int n = dim();
        auto inv = std::make_shared<std::vector<std::vector<XReal>>>(
            n, std::vector<XReal>(n));
        // cofactor expansion: inv[i][j] = C_ji / det
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                std::vector<std::vector<XReal>> sub;
                sub.reserve(n - 1);
                for (int c = 0; c < n; ++c) {
                    if (c == i) continue;    // adjugate: delete row j, col i of A
                    std::vector<XReal> colv;
                    colv.reserve(n - 1);
                    for (int r = 0; r < n; ++r)
                        if (r != j) colv.push_back(cols_[c][r]);
                    sub.push_back(std::move(colv));
                }
                XReal cof = (n == 1) ? XReal(1) : det_expansion(sub);
                if ((i + j) % 2 == 1) cof = -cof;
                (*inv)[i][j] = cof / det_;
            }
        }
        inv_ = std::move(inv);
    }
    return *inv_;
}

const std::vector<std::vector<XReal>>& Lattice::gram() const {
    if (!gram_) {
        const int n = dim();
        auto g = std::make_shared<std::vector<std::vector<XReal>>>(
            n, std::vector<XReal>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                XReal s;
                for (int r = 0; r < n; ++r) s = s + cols_[i][r] * cols_[j][r];
                (*g)[i][j] = s;
                (*g)[j][i] = s;
            }
        }
        gram_ = std::move(g);
    }
    return *gram_;
}

Lattice Lattice::dual() const {
    const auto& inv = inverse();
    const int n = dim();
    std::vector<std::vector<XReal>> cols(n, std::vector<XReal>(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) cols[j][i] = inv[j][i];   // row j of A^{-1}
    return Lattice::make(std::move(cols), id_.empty() ? "" : id_ + ".dual");
}

Lattice Lattice::scaled(const mpq_class& k) const {
    if (k == 0) throw structural_error("lattice scale factor must be nonzero");
    const XReal kk = XReal(k);
    std::vector<std::vector<XReal>> cols(dim());
    for (int j = 0; j < dim(); ++j) {
        cols[j].reserve(dim());
        for (int i = 0; i < dim(); ++i) cols[j].push_back(kk * cols_[j][i]);
    }
    Lattice L = Lattice::make(std::move(cols), id_);
    L.dioph = std::nullopt;    // scaling breaks the (p + Theta q, q) form
    return L;
}

const std::vector<std::vector<DIv>>& Lattice::fast_entries() const {
    if (!fast_) {
        const int n = dim();
        auto f = std::make_shared<std::vector<std::vector<DIv>>>(
            n, std::vector<DIv>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) (*f)[i][j] = cols_[j][i].fast();
        fast_ = std::move(f);
    }
    return *fast_;
}

} // namespace weakadm
