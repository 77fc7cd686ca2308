#include "weakadm/box.hpp"

namespace weakadm {

namespace {

// Exact-where-possible test of Q_i <= (prod_j Q_j^{beta_j})^{1/t}:
// raise both sides to the power t*L (L = lcm of weight denominators) so all
// exponents are integers, then compare.
bool side_condition_holds(const Shape& s, const std::vector<XReal>& radii,
                          int i, std::string* why) {
    mpz_class L = 1;
    mpq_class t = s.t();
    for (const auto& b : s.beta) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), b.get_den().get_mpz_t());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.get_den().get_mpz_t());
    const mpq_class tL = t * mpq_class(L);
    XReal lhs = pow_i(radii[i], tL.get_num().get_si());
    XReal rhs(1);
    for (int j = 0; j < s.blocks(); ++j) {
        const mpq_class bL = s.beta[j] * mpq_class(L);
        rhs = rhs * pow_i(radii[j], bL.get_num().get_si());
    }
    const int c = compare(lhs, rhs);
    if (c > 0) {
        if (why)
            *why = "box: block " + std::to_string(i) +
                   " outside the excluded set has radius above the weighted mean";
        return false;
    }
    return true;
}

} // namespace

std::optional<BoxSpec> BoxSpec::try_make(Shape s, std::vector<XReal> center,
                                         std::vector<XReal> radii, std::string* why) {
    const int n = s.blocks();
    if ((int)center.size() != s.dim()) throw structural_error("box: center has wrong length");
    if ((int)radii.size() != n) throw structural_error("box: need one radius per block");
    for (const auto& r : radii)
        if (sign(r) <= 0) throw structural_error("box: radii must be positive");

    BoxSpec b;
    b.shape = std::move(s);
    b.center = std::move(center);
    b.radii = std::move(radii);

    // all radii sharing one node / one rational value: Qbar is that radius
    bool all_same = true;
    for (int i = 1; i < n && all_same; ++i) {
        if (b.radii[i].same_node(b.radii[0])) continue;
        if (b.radii[i].is_rational() && b.radii[0].is_rational() &&
            b.radii[i].rat() == b.radii[0].rat())
            continue;
        all_same = false;
    }
    const mpq_class t = b.shape.t();
    if (all_same) {
        b.qbar = b.radii[0];
    } else {
        XReal prod(1);
        for (int i = 0; i < n; ++i)
            prod = prod * pow_q(b.radii[i], b.shape.beta[i] / t);
        b.qbar = prod;
    }

    // extremes (ties resolved to the smallest index; undecidable ties throw)
    b.qmax_block = 0;
    b.qmin_block = 0;
    for (int i = 1; i < n; ++i) {
        if (compare(b.radii[i], b.radii[b.qmax_block]) > 0) b.qmax_block = i;
        if (compare(b.radii[i], b.radii[b.qmin_block]) < 0) b.qmin_block = i;
    }
    b.qmax = b.radii[b.qmax_block];
    b.qmin = b.radii[b.qmin_block];

    // side condition for blocks outside I (vacuous when I is full)
    if (!all_same) {
        for (int i = 0; i < n; ++i) {
            if (b.shape.in_I[i]) continue;
            if (!side_condition_holds(b.shape, b.radii, i, why)) return std::nullopt;
        }
    }

    b.theta.resize(n);
    for (int i = 0; i < n; ++i) b.theta[i] = b.qbar / b.radii[i];
    b.theta_min = b.qbar / b.qmax;
    return b;
}

BoxSpec BoxSpec::make(Shape s, std::vector<XReal> center, std::vector<XReal> radii) {
    std::string why;
    auto b = try_make(std::move(s), std::move(center), std::move(radii), &why);
    if (!b) throw structural_error(why);
    return *std::move(b);
}

BoxSpec BoxSpec::cube(Shape s, std::vector<XReal> center, const XReal& q) {
    const int n = s.blocks();
    return make(std::move(s), std::move(center), std::vector<XReal>(n, q));
}

XReal BoxSpec::volume() const {
    XReal v(1);
    for (int i = 0; i < shape.blocks(); ++i)
        v = v * unit_ball_volume(shape.m[i]) * pow_i(radii[i], shape.m[i]);
    return v;
}

std::vector<XReal> BoxSpec::phi_center() const {
    std::vector<XReal> p(shape.dim());
    for (int i = 0; i < shape.blocks(); ++i) {
        const int o = shape.offset(i);
        for (int k = 0; k < shape.m[i]; ++k) p[o + k] = theta[i] * center[o + k];
    }
    return p;
}

XReal BoxSpec::phi_center_norm() const { return norm(phi_center()); }

bool BoxSpec::origin_inside(mpfr_prec_t max_bits) const {
    for (int i = 0; i < shape.blocks(); ++i) {
        XReal d2;
        const int o = shape.offset(i);
        for (int k = 0; k < shape.m[i]; ++k)
            d2 = d2 + center[o + k] * center[o + k];
        if (compare(d2, radii[i] * radii[i], max_bits) > 0) return false;
    }
    return true;
}

} // namespace weakadm
