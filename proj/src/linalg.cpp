#include "weakadm/linalg.hpp"

#include <cmath>
#include <cstdlib>

namespace weakadm {

// ----------------------------------------------------------------------
// integer kernel via unimodular column elimination
// ----------------------------------------------------------------------

std::vector<std::vector<mpz_class>> integer_kernel(
    const std::vector<std::vector<mpq_class>>& rows, int d) {
    for (const auto& r : rows)
        if ((int)r.size() != d) throw structural_error("integer_kernel: row length mismatch");

    // clear denominators row by row; kernel is unchanged
    std::vector<std::vector<mpz_class>> R;
    R.reserve(rows.size());
    for (const auto& r : rows) {
        mpz_class L = 1;
        for (const auto& e : r) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), e.get_den().get_mpz_t());
        std::vector<mpz_class> ri(d);
        for (int j = 0; j < d; ++j) {
            mpq_class v = r[j] * mpq_class(L);
            ri[j] = v.get_num();   // denominator is 1 now
        }
        R.push_back(std::move(ri));
    }

    // U starts as the identity; column operations are mirrored on U
    std::vector<std::vector<mpz_class>> U(d, std::vector<mpz_class>(d, 0));
    for (int j = 0; j < d; ++j) U[j][j] = 1;

    auto colcombine = [&](std::vector<std::vector<mpz_class>>& M, int a, int b,
                          const mpz_class& u, const mpz_class& v,
                          const mpz_class& s, const mpz_class& t) {
        // (col_a, col_b) <- (u col_a + v col_b, s col_a + t col_b)
        for (auto& row : M) {
            mpz_class na = u * row[a] + v * row[b];
            mpz_class nb = s * row[a] + t * row[b];
            row[a] = std::move(na);
            row[b] = std::move(nb);
        }
    };
    auto ucombine = [&](int a, int b, const mpz_class& u, const mpz_class& v,
                        const mpz_class& s, const mpz_class& t) {
        for (int i = 0; i < d; ++i) {
            mpz_class na = u * U[a][i] + v * U[b][i];
            mpz_class nb = s * U[a][i] + t * U[b][i];
            U[a][i] = std::move(na);
            U[b][i] = std::move(nb);
        }
    };

    int lead = 0;   // first column not yet fixed as a pivot
    for (size_t r = 0; r < R.size() && lead < d; ++r) {
        int piv = -1;
        for (int j = lead; j < d; ++j)
            if (R[r][j] != 0) { piv = j; break; }
        if (piv < 0) continue;
        if (piv != lead) {
            colcombine(R, lead, piv, 0, 1, 1, 0);
            ucombine(lead, piv, 0, 1, 1, 0);
        }
        for (int j = lead + 1; j < d; ++j) {
            if (R[r][j] == 0) continue;
            mpz_class g, u, v;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                       R[r][lead].get_mpz_t(), R[r][j].get_mpz_t());
            mpz_class s = -R[r][j] / g, t = R[r][lead] / g;
            // [(u, v), (s, t)] has determinant u t - v s = 1
            colcombine(R, lead, j, u, v, s, t);
            ucombine(lead, j, u, v, s, t);
        }
        ++lead;
    }

    std::vector<std::vector<mpz_class>> kernel;
    for (int j = lead; j < d; ++j) {
        std::vector<mpz_class> col(d);
        for (int i = 0; i < d; ++i) col[i] = U[j][i];
        kernel.push_back(std::move(col));
    }
    return kernel;
}

// ----------------------------------------------------------------------
// integer rank (fraction-free Gaussian elimination)
// ----------------------------------------------------------------------

int integer_rank(std::vector<std::vector<mpz_class>> vecs) {
    if (vecs.empty()) return 0;
    const size_t d = vecs[0].size();
    int rank = 0;
    size_t col = 0;
    for (size_t row = 0; row < vecs.size() && col < d; ++col) {
        size_t sel = row;
        while (sel < vecs.size() && vecs[sel][col] == 0) ++sel;
        if (sel == vecs.size()) continue;
        std::swap(vecs[row], vecs[sel]);
        for (size_t i = row + 1; i < vecs.size(); ++i) {
            if (vecs[i][col] == 0) continue;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), vecs[row][col].get_mpz_t(), vecs[i][col].get_mpz_t());
            mpz_class a = vecs[i][col] / g, b = vecs[row][col] / g;
            for (size_t j = col; j < d; ++j)
                vecs[i][j] = b * vecs[i][j] - a * vecs[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// ----------------------------------------------------------------------
// floating LLL with exact transform
// ----------------------------------------------------------------------

std::vector<std::vector<mpz_class>> lll_transform(
    const std::vector<std::vector<double>>& cols_in) {
    const int d = (int)cols_in.size();
    if (d == 0) throw structural_error("lll: empty basis");
    const size_t dim = cols_in[0].size();
    for (const auto& c : cols_in)
        if (c.size() != dim) throw structural_error("lll: ragged basis");

    std::vector<std::vector<double>> b = cols_in;             // working basis
    std::vector<std::vector<mpz_class>> U(d, std::vector<mpz_class>(d, 0));
    for (int j = 0; j < d; ++j) U[j][j] = 1;

    auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (size_t i = 0; i < dim; ++i) s += x[i] * y[i];
        return s;
    };

    std::vector<std::vector<double>> bs(d, std::vector<double>(dim));
    std::vector<std::vector<double>> mu(d, std::vector<double>(d, 0.0));
    std::vector<double> Bn(d, 0.0);

    auto gso = [&]() {
        for (int i = 0; i < d; ++i) {
            bs[i] = b[i];
            for (int j = 0; j < i; ++j) {
                mu[i][j] = dot(b[i], bs[j]) / Bn[j];
                for (size_t k = 0; k < dim; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
            }
            Bn[i] = dot(bs[i], bs[i]);
            if (!(Bn[i] > 0.0) || !std::isfinite(Bn[i]))
                throw structural_error("lll: degenerate floating Gram");
        }
    };

    gso();
    const double delta = 0.99;
    long guard = 10000L * d * d;
    int k = 1;
    while (k < d) {
        if (--guard < 0) break;  // floating non-termination: return what we have
        // size-reduce b_k against b_{k-1}..b_0
        for (int j = k - 1; j >= 0; --j) {
            const double m = mu[k][j];
            if (std::fabs(m) > 0.5) {
                const double rf = std::nearbyint(m);
                mpz_class r;
                mpz_set_d(r.get_mpz_t(), rf);
                for (size_t i = 0; i < dim; ++i) b[k][i] -= rf * b[j][i];
                for (int i = 0; i < d; ++i) U[k][i] -= r * U[j][i];
                gso();
            }
        }
        if (Bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * Bn[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            std::swap(U[k], U[k - 1]);
            gso();
            k = std::max(k - 1, 1);
        }
    }
    return U;
}

} // namespace weakadm
