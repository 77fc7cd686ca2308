// Truncated Moebius inversion for primitive counts,
//
//     #F(1) = sum_{k<=[G]} mu(k) #(k Lambda cap Z_Q^*),
//
// valid because x = k x' in Z_Q^* forces k phi(x') into B_{phi(y)}(R), so
// k lambda1(phi Lambda) <= R + |phi(y)| with R = n^{1/2} Qbar.

#include "weakadm/moebius.hpp"

#include <cinttypes>
#include <cstdio>

#include "weakadm/divisor.hpp"
#include "weakadm/errors.hpp"

namespace weakadm {

namespace {

constexpr long long kSieveCap = 10'000'000;

// phi Lambda: row c of the basis scaled by theta_{block(c)}
Lattice phi_lattice(const Lattice& L, const BoxSpec& box) {
    const int N = L.dim();
    std::vector<std::vector<XReal>> cols(N, std::vector<XReal>(N));
    for (int j = 0; j < N; ++j)
        for (int c = 0; c < N; ++c)
            cols[j][c] = box.theta[box.shape.block_of(c)] * L.entry(c, j);
    return Lattice::make(std::move(cols), L.id() + "+phi");
}

// R + |phi(y)|.  R is built as sqrt(n Qbar^2) off the shared qbar node, so
// rational Qbar^2 collapses and the truncation floor stays decidable.
XReal phi_reach(const BoxSpec& box) {
    const XReal r = sqrt(XReal((long)box.shape.blocks()) * (box.qbar * box.qbar));
    return r + box.phi_center_norm();
}

} // namespace

TruncationG truncation_G(const Lattice& L, const BoxSpec& box, const EnumOptions& opts) {
    if (L.dim() != box.shape.dim())
        throw structural_error("truncation_G: lattice and box dimension mismatch");

    const XReal reach = phi_reach(box);
    const MinResult lam = lambda1(phi_lattice(L, box), opts);
    if (!lam.attained)
        throw structural_error("truncation_G: lattice without a first minimum");

    TruncationG out;
    out.sharp = reach / lam.value;
    out.floor_sharp = floor_exact(out.sharp, opts.max_bits).get_si();
    if (out.floor_sharp < 0) out.floor_sharp = 0;

    // majorant (R + |phi(y)|)(1/mu + 1/Qbar); division by an interval that
    // touches zero widens to the whole line, i.e. an infinite majorant
    const NuProfile prof = nu_profile(L, box.shape, box.qmax, opts);
    const auto muq = mu_value(prof, lambda1_in_subspace(L, box.shape, opts), box.qmax,
                              opts.max_bits);
    const DIv one = DIv::point(1.0);
    const DIv inv_mu = muq.empty ? DIv::point(0.0) : one / muq.nm;
    out.majorant = reach.fast() * (inv_mu + one / box.qbar.fast());
    return out;
}

std::string MoebiusTrace::csv() const {
    std::string s = "k,mu,count\n";
    char buf[96];
    for (const auto& t : terms) {
        std::snprintf(buf, sizeof buf, "%lld,%d,%lld\n", t.k, t.mu, t.count);
        s += buf;
    }
    return s;
}

MoebiusResult count_primitive_moebius(const Lattice& L, const BoxSpec& box,
                                      const EnumOptions& opts) {
    const TruncationG g = truncation_G(L, box, opts);
    if (g.floor_sharp > kSieveCap)
        throw budget_error("count_primitive_moebius: truncation " +
                           std::to_string(g.floor_sharp) + " exceeds the sieve cap");

    MoebiusResult res;
    res.trace.g_sharp = g.sharp.fast().hi;
    res.trace.g_majorant = g.majorant.hi;
    res.trace.g_floor = g.floor_sharp;

    if (g.floor_sharp >= 1) {
        const auto mu = moebius_sieve(g.floor_sharp);
        for (long long k = 1; k <= g.floor_sharp; ++k) {
            if (mu[(size_t)k] == 0) continue;
            const long long c = count_multiples(L, k, box, opts);
            res.trace.terms.push_back({k, (int)mu[(size_t)k], c});
            res.count += mu[(size_t)k] * c;
        }
    }
    res.trace.total = res.count;
    return res;
}

std::vector<DensityRow> primitive_density_experiment(const Lattice& L,
                                                     const std::vector<mpq_class>& cube_radii,
                                                     const EnumOptions& opts) {
    const int N = L.dim();
    const Iv zeta = zeta_certified((unsigned)N);
    std::vector<DensityRow> rows;
    rows.reserve(cube_radii.size());
    std::vector<XReal> origin(N, XReal(0));

    for (const mpq_class& q : cube_radii) {
        const BoxSpec box = BoxSpec::cube(Shape::cube(N), origin, XReal(q));
        DensityRow row;
        row.q = mpq_class(q).get_d();
        row.count = count_primitive_moebius(L, box, opts).count;

        const Iv main = box.volume().eval(128) / (zeta * L.det_abs().eval(128));
        row.main_lo = main.dlo();
        row.main_hi = main.dhi();
        const double mid = 0.5 * (row.main_lo + row.main_hi);
        row.ratio = mid > 0.0 ? (double)row.count / mid : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace weakadm
