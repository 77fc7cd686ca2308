#include "detail/dioph_fast.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "weakadm/cf.hpp"
#include "weakadm/divisor.hpp"
#include "weakadm/errors.hpp"

namespace weakadm {
namespace detail {

namespace {

long long ll_gcd(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long fdiv(long long a, long long b) {   // floor division, b > 0
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

long long to_ll(const mpz_class& z) {
    if (!z.fits_slong_p()) throw budget_error("integer endpoint out of range");
    return z.get_si();
}

bool dfloor(const DIv& d, long long& out) {
    if (!(std::isfinite(d.lo) && std::isfinite(d.hi))) return false;
    const double fl = std::floor(d.lo), fh = std::floor(d.hi);
    if (fl != fh || std::abs(fl) > 4.0e15) return false;
    out = (long long)fl;
    return true;
}

bool dceil(const DIv& d, long long& out) {
    if (!(std::isfinite(d.lo) && std::isfinite(d.hi))) return false;
    const double cl = std::ceil(d.lo), ch = std::ceil(d.hi);
    if (cl != ch || std::abs(cl) > 4.0e15) return false;
    out = (long long)cl;
    return true;
}

// ----------------------------------------------------------------------
// shared tables for the slice sweep (actual point = scale * (p + Theta q, q))
// ----------------------------------------------------------------------

struct DT {
    const Lattice* L = nullptr;
    const BoxSpec* box = nullptr;
    int r = 0, s = 0;
    long long scale = 1;
    long long budget = 0;
    mpfr_prec_t max_bits = 0;

    std::vector<long long> qlo, qhi;    // per q coordinate, certified window
    std::vector<int> qcheck_blocks;     // q blocks with m >= 2: exact ball check

    std::vector<DIv> plo_d, phi_d;      // (y_c -+ Q_c)/scale, fast
    std::vector<XReal> plo_x, phi_x;    // same, exact
    std::vector<std::vector<DIv>> th_d; // theta rows, fast
};

DT build_tables(const Lattice& L, const BoxSpec& box, long long k, const EnumOptions& opts) {
    DT t;
    t.L = &L;
    t.box = &box;
    t.r = L.dioph->r;
    t.s = L.dioph->s;
    t.scale = k;
    t.budget = opts.budget;
    t.max_bits = opts.max_bits;
    const Shape& sh = box.shape;
    const XReal kk((long)k);

    t.qlo.resize(t.s);
    t.qhi.resize(t.s);
    for (int j = 0; j < t.s; ++j) {
        const int c = t.r + j;
        const int blk = sh.block_of(c);
        XReal lo = (box.center[c] - box.radii[blk]) / kk;
        XReal hi = (box.center[c] + box.radii[blk]) / kk;
        t.qlo[j] = to_ll(ceil_exact(lo, opts.max_bits));
        t.qhi[j] = to_ll(floor_exact(hi, opts.max_bits));
    }
    for (int b = 0; b < sh.blocks(); ++b)
        if (sh.offset(b) >= t.r && sh.m[b] >= 2) t.qcheck_blocks.push_back(b);

    t.plo_d.resize(t.r);
    t.phi_d.resize(t.r);
    t.plo_x.resize(t.r);
    t.phi_x.resize(t.r);
    t.th_d.assign(t.r, std::vector<DIv>(t.s));
    for (int c = 0; c < t.r; ++c) {
        const int blk = sh.block_of(c);
        t.plo_x[c] = (box.center[c] - box.radii[blk]) / kk;
        t.phi_x[c] = (box.center[c] + box.radii[blk]) / kk;
        t.plo_d[c] = t.plo_x[c].fast();
        t.phi_d[c] = t.phi_x[c].fast();
        for (int j = 0; j < t.s; ++j) t.th_d[c][j] = L.dioph->theta[(size_t)c * t.s + j].fast();
    }
    return t;
}

// visit every q in the certified window that passes the exact block checks
template <class F>
void for_q(DT& t, std::vector<long long>& q, int j, F&& f) {
    if (j == t.s) {
        for (int b : t.qcheck_blocks) {
            const Shape& sh = t.box->shape;
            XReal d2;
            for (int i = 0; i < sh.m[b]; ++i) {
                const int c = sh.offset(b) + i;
                const XReal dd =
                    XReal((long)(t.scale * q[c - t.r])) - t.box->center[c];
                d2 = d2 + dd * dd;
            }
            const XReal r2 = t.box->radii[b] * t.box->radii[b];
            if (compare(d2, r2, t.max_bits) > 0) return;
        }
        f(q);
        return;
    }
    for (long long v = t.qlo[j]; v <= t.qhi[j]; ++v) {
        if (--t.budget < 0) throw budget_error("slice sweep exhausted its budget");
        q[j] = v;
        for_q(t, q, j + 1, f);
    }
}

// certified integer p-intervals for a fixed q; false when some slice is empty
bool p_intervals(DT& t, const std::vector<long long>& q,
                 std::vector<std::array<long long, 2>>& out) {
    out.resize(t.r);
    for (int c = 0; c < t.r; ++c) {
        DIv td = DIv::point(0.0);
        for (int j = 0; j < t.s; ++j)
            if (q[j]) td += t.th_d[c][j] * DIv::point((double)q[j]);
        long long F = 0, C = 0;
        const bool okF = dfloor(t.phi_d[c] - td, F);
        const bool okC = dceil(t.plo_d[c] - td, C);
        if (!okF || !okC) {
            XReal tx;
            for (int j = 0; j < t.s; ++j)
                if (q[j]) tx = tx + t.L->dioph->theta[(size_t)c * t.s + j] * XReal((long)q[j]);
            if (!okF) F = to_ll(floor_exact(t.phi_x[c] - tx, t.max_bits));
            if (!okC) C = to_ll(ceil_exact(t.plo_x[c] - tx, t.max_bits));
        }
        if (C > F) return false;
        out[c] = {C, F};
    }
    return true;
}

void add_checked(long long& total, long long inc) {
    if (inc > std::numeric_limits<long long>::max() - total)
        throw budget_error("count overflow");
    total += inc;
}

long long interval_product(const std::vector<std::array<long long, 2>>& iv) {
    long long total = 1;
    for (const auto& ab : iv) {
        const long long cnt = ab[1] - ab[0] + 1;
        if (cnt > 0 && total > std::numeric_limits<long long>::max() / cnt)
            throw budget_error("count overflow");
        total *= cnt;
    }
    return total;
}

// distinct prime factors by trial division
std::vector<long long> prime_factors(long long g) {
    std::vector<long long> ps;
    for (long long p = 2; p * p <= g; p += (p == 2 ? 1 : 2)) {
        if (g % p == 0) {
            ps.push_back(p);
            while (g % p == 0) g /= p;
        }
    }
    if (g > 1) ps.push_back(g);
    return ps;
}

// #multiples of d in [a, b]
long long multiples_in(long long a, long long b, long long d) {
    if (a > b) return 0;
    return fdiv(b, d) - fdiv(a - 1, d);
}

} // namespace

// ----------------------------------------------------------------------
// applicability
// ----------------------------------------------------------------------

bool dioph_applicable(const Lattice& L, const BoxSpec& box) {
    if (!L.dioph) return false;
    const int r = L.dioph->r, s = L.dioph->s;
    if (L.dim() != r + s || box.shape.dim() != L.dim()) return false;
    // p coordinates must come in their own one-dimensional blocks; q blocks
    // may have any dimension but must not mix with p coordinates
    const Shape& sh = box.shape;
    for (int b = 0; b < sh.blocks(); ++b) {
        const int o = sh.offset(b);
        if (o < r) {
            if (sh.m[b] != 1) return false;
        }
        // o >= r: pure q block, fine
    }
    return true;
}

// ----------------------------------------------------------------------
// counting
// ----------------------------------------------------------------------

long long dioph_count(const Lattice& L, const BoxSpec& box, const EnumOptions& opts) {
    DT t = build_tables(L, box, 1, opts);
    long long total = 0;
    std::vector<long long> q(t.s, 0);
    std::vector<std::array<long long, 2>> iv;
    for_q(t, q, 0, [&](const std::vector<long long>& qq) {
        if (!p_intervals(t, qq, iv)) return;
        add_checked(total, interval_product(iv));
    });
    return total;
}

long long dioph_count_multiples(const Lattice& L, long long k, const BoxSpec& box,
                                const EnumOptions& opts) {
    DT t = build_tables(L, box, k, opts);
    long long total = 0;
    std::vector<long long> q(t.s, 0);
    std::vector<std::array<long long, 2>> iv;
    for_q(t, q, 0, [&](const std::vector<long long>& qq) {
        if (!p_intervals(t, qq, iv)) return;
        add_checked(total, interval_product(iv));
    });
    if (total > 0 && box.origin_inside(opts.max_bits)) --total;   // exclude 0
    return total;
}

long long dioph_count_primitive(const Lattice& L, const BoxSpec& box,
                                const EnumOptions& opts) {
    DT t = build_tables(L, box, 1, opts);
    long long total = 0;
    std::vector<long long> q(t.s, 0);
    std::vector<std::array<long long, 2>> iv;

    for_q(t, q, 0, [&](const std::vector<long long>& qq) {
        long long g = 0;
        for (long long v : qq) g = ll_gcd(g, v);

        if (g == 0) {
            // the q = 0 strip: count p with gcd(p) = 1
            if (!p_intervals(t, qq, iv)) return;
            if (t.r == 1) {
                long long c = 0;
                if (iv[0][0] <= -1 && -1 <= iv[0][1]) ++c;
                if (iv[0][0] <= 1 && 1 <= iv[0][1]) ++c;
                add_checked(total, c);
                return;
            }
            long long dmax = 0;
            for (const auto& ab : iv)
                dmax = std::max({dmax, std::abs(ab[0]), std::abs(ab[1])});
            if (dmax > 2'000'000) throw budget_error("primitive sweep: strip too wide");
            if (dmax < 1) return;   // only the zero tuple fits
            const auto mu = moebius_sieve(dmax);
            bool zero_in = true;
            for (const auto& ab : iv) zero_in = zero_in && ab[0] <= 0 && 0 <= ab[1];
            __int128 strip = 0;
            for (long long d = 1; d <= dmax; ++d) {
                if (!mu[(size_t)d]) continue;
                if (--t.budget < 0) throw budget_error("slice sweep exhausted its budget");
                __int128 prod = 1;
                for (const auto& ab : iv) {
                    const long long m = multiples_in(ab[0], ab[1], d);
                    if (!m) {
                        prod = 0;
                        break;
                    }
                    if (prod > (__int128)2e36 / m) throw budget_error("count overflow");
                    prod *= m;
                }
                strip += mu[(size_t)d] * (prod - (zero_in ? 1 : 0));
            }
            if (strip < 0 || strip > std::numeric_limits<long long>::max())
                throw budget_error("count overflow");
            add_checked(total, (long long)strip);
            return;
        }

        if (!p_intervals(t, qq, iv)) return;
        // gcd(p_1..p_r, g) = 1 via Moebius over the squarefree divisors of g
        const auto ps = prime_factors(g);
        __int128 sum = 0;
        const size_t nsub = (size_t)1 << ps.size();
        for (size_t mask = 0; mask < nsub; ++mask) {
            if (--t.budget < 0) throw budget_error("slice sweep exhausted its budget");
            long long d = 1;
            int bits = 0;
            for (size_t i = 0; i < ps.size(); ++i)
                if (mask & ((size_t)1 << i)) {
                    d *= ps[i];
                    ++bits;
                }
            __int128 prod = 1;
            for (const auto& ab : iv) {
                const long long m = multiples_in(ab[0], ab[1], d);
                if (!m) {
                    prod = 0;
                    break;
                }
                if (prod > (__int128)2e36 / m) throw budget_error("count overflow");
                prod *= m;
            }
            sum += (bits % 2 == 0 ? prod : -prod);
        }
        if (sum < 0 || sum > std::numeric_limits<long long>::max())
            throw budget_error("count overflow");
        add_checked(total, (long long)sum);
    });
    return total;
}

std::map<long long, long long> dioph_gcd_histogram(const Lattice& L, const BoxSpec& box,
                                                   const EnumOptions& opts) {
    // any point with coefficient gcd g has some coordinate of modulus >= g,
    // so g never exceeds the sup-norm reach of the box
    double reach = 0.0;
    const Shape& sh = box.shape;
    for (int c = 0; c < sh.dim(); ++c) {
        const DIv yc = box.center[c].fast();
        const DIv qc = box.radii[sh.block_of(c)].fast();
        reach = std::max(reach, std::max(std::abs(yc.lo), std::abs(yc.hi)) + qc.hi);
    }
    if (!(reach < 1e6)) throw budget_error("gcd histogram: box reach too large");
    const long long gmax = (long long)std::floor(reach);

    std::map<long long, long long> h;
    for (long long g = 1; g <= gmax; ++g) {
        const XReal gg((long)g);
        std::vector<XReal> center(box.center.size());
        for (size_t i = 0; i < center.size(); ++i) center[i] = box.center[i] / gg;
        std::vector<XReal> radii(box.radii.size());
        for (size_t i = 0; i < radii.size(); ++i) radii[i] = box.radii[i] / gg;
        const BoxSpec bg = BoxSpec::make(box.shape, std::move(center), std::move(radii));
        const long long cnt = dioph_count_primitive(L, bg, opts);
        if (cnt) h[g] = cnt;
    }
    return h;
}

// ----------------------------------------------------------------------
// convergent records for the nu staircase
// ----------------------------------------------------------------------

bool dioph_cf_applicable(const Lattice& L, const Shape& s) {
    if (!L.dioph || !L.dioph->cf) return false;
    const int r = L.dioph->r;
    if (L.dioph->s != 1 || L.dim() != r + 1) return false;
    if (s.blocks() != r + 1) return false;
    // r one-dimensional p blocks then the q block: C = { x : x_{r+1} = 0 }
    for (int b = 0; b <= r; ++b)
        if (s.m[b] != 1 || (s.in_I[b] != 0) != (b == r)) return false;
    return true;
}

std::vector<NuSample> dioph_cf_records(const Lattice& L, const Shape& s,
                                       const XReal& rho_max) {
    const auto cf = L.dioph->cf;
    const int r = L.dioph->r;
    // every p row reads +-alpha, so at fixed q > 0 the row moduli are all
    // minimized by nearest integers and equal ||q alpha||; non-convergent q
    // lose to the previous convergent in radius and in Nm simultaneously
    mpq_class bp = 0;
    for (int i = 0; i < r; ++i) bp += s.beta[i];
    const mpq_class bq = s.beta[r];

    std::vector<NuSample> out;
    for (size_t j = 0;; ++j) {
        const mpz_class qj = cf->q(j);
        const XReal qx(qj);
        // |x| >= q_j, so once q_j certainly exceeds the horizon we are done
        const auto c = try_compare(qx, rho_max);
        if (c && *c > 0) break;

        const XReal qam = cf->qalpha_minus_p(j);
        NuSample ns;
        ns.rho = sqrt(XReal((long)r) * qam * qam + qx * qx);
        ns.nm = pow_q(abs(qam), bp) * pow_q(qx, bq);
        ns.z.reserve(r + 1);
        for (int i = 0; i < r; ++i) {
            const int sgn = (size_t)i < L.dioph->cf_sign.size() ? L.dioph->cf_sign[i] : 1;
            ns.z.push_back(to_ll(-sgn * cf->p(j)));
        }
        ns.z.push_back(to_ll(qj));
        const bool last = sign(ns.nm) == 0;   // rational alpha: front closes here
        out.push_back(std::move(ns));
        if (last) break;
        if (j > 100000) throw budget_error("convergent scan ran away");
    }
    return out;
}

} // namespace detail
} // namespace weakadm
