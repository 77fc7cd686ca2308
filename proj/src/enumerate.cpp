#include "weakadm/enumerate.hpp"

#include <algorithm>
#include <numeric>

#include "weakadm/linalg.hpp"
#include "detail/dioph_fast.hpp"
#include "detail/enum_core.hpp"

namespace weakadm {

namespace {

struct enum_stop {};   // thrown by emit callbacks to abort a sweep early

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

bool is_zero_vec(const std::vector<long long>& z) {
    for (long long v : z)
        if (v) return false;
    return true;
}

bool sign_canonical(const std::vector<long long>& z) {
    for (long long v : z) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false;   // zero vector: callers skip it anyway
}

// ----------------------------------------------------------------------
// exact box membership
// ----------------------------------------------------------------------

struct BoxTables {
    const BoxSpec* box;
    const Lattice* L;
    std::vector<DIv> center_d;             // per coordinate
    std::vector<DIv> rad2_d;               // per block, radius^2
    std::vector<XReal> rad2_x;             // per block

    BoxTables(const Lattice& lat, const BoxSpec& b) : box(&b), L(&lat) {
        const int N = b.shape.dim();
        center_d.resize(N);
        for (int i = 0; i < N; ++i) center_d[i] = b.center[i].fast();
        rad2_d.resize(b.shape.blocks());
        rad2_x.resize(b.shape.blocks());
        for (int i = 0; i < b.shape.blocks(); ++i) {
            rad2_x[i] = b.radii[i] * b.radii[i];
            rad2_d[i] = rad2_x[i].fast();
        }
    }

    //  1 in, 0 out, -1 ambiguous
    int fast_check(const std::vector<long long>& z) const {
        const auto& A = L->fast_entries();
        const Shape& s = box->shape;
        const int N = s.dim();
        int c = 0;
        for (int blk = 0; blk < s.blocks(); ++blk) {
            DIv acc = DIv::point(0.0);
            for (int k = 0; k < s.m[blk]; ++k, ++c) {
                DIv x = DIv::point(0.0);
                for (int j = 0; j < N; ++j) {
                    if (z[j] == 0) continue;
                    x += A[c][j] * DIv::point((double)z[j]);
                }
                acc += sqr(x - center_d[c]);
            }
            if (acc.lo > rad2_d[blk].hi) return 0;
            if (!(acc.hi <= rad2_d[blk].lo)) return -1;
        }
        return 1;
    }

    bool exact_check(const std::vector<long long>& z, mpfr_prec_t max_bits) const {
        const std::vector<XReal> x = L->point(z);
        const Shape& s = box->shape;
        for (int blk = 0; blk < s.blocks(); ++blk) {
            XReal d2;
            const int o = s.offset(blk);
            for (int k = 0; k < s.m[blk]; ++k) {
                const XReal dd = x[o + k] - box->center[o + k];
                d2 = d2 + dd * dd;
            }
            if (compare(d2, rad2_x[blk], max_bits) > 0) return false;
        }
        return true;
    }

    bool in_box(const std::vector<long long>& z, mpfr_prec_t max_bits) const {
        const int f = fast_check(z);
        if (f >= 0) return f == 1;
        return exact_check(z, max_bits);
    }
};

// coefficients z must stay exactly representable as doubles for the fast path
void guard_coeffs(const std::vector<long long>& z) {
    for (long long v : z)
        if (v > (1LL << 52) || v < -(1LL << 52))
            throw budget_error("coefficient out of exactly-representable range");
}

// gram of the per-block-scaled columns: G'[i][j] = <D a_i, D a_j> with
// D = diag(1/Q_{block of coordinate}); the box is inside |D(x-y)|^2 <= n.
std::vector<std::vector<XReal>> scaled_gram(const Lattice& L, const BoxSpec& box,
                                            const std::vector<XReal>& rad2_x) {
    const int d = L.dim();
    const Shape& s = box.shape;
    std::vector<std::vector<XReal>> G(d, std::vector<XReal>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            XReal acc;
            for (int c = 0; c < d; ++c) {
                const int blk = s.block_of(c);
                acc = acc + (L.entry(c, i) * L.entry(c, j)) / rad2_x[blk];
            }
            G[i][j] = acc;
            G[j][i] = acc;
        }
    }
    return G;
}

// w with A w = y (exact through the cached inverse)
std::vector<XReal> solve_center(const Lattice& L, const std::vector<XReal>& y) {
    const auto& inv = L.inverse();
    const int d = L.dim();
    std::vector<XReal> w(d);
    for (int i = 0; i < d; ++i) {
        XReal acc;
        for (int j = 0; j < d; ++j) acc = acc + inv[i][j] * y[j];
        w[i] = acc;
    }
    return w;
}

// Sweep all coefficient vectors whose image could lie in the box, calling
// visit(z) for each certified member.
void for_box_points(const Lattice& L, const BoxSpec& box, const EnumOptions& opts,
                    const std::function<void(const std::vector<long long>&)>& visit) {
    if (L.dim() != box.shape.dim())
        throw structural_error("box and lattice dimension mismatch");
    BoxTables T(L, box);
    const auto G = scaled_gram(L, box, T.rad2_x);
    const auto w = solve_center(L, box.center);
    long long budget = opts.budget;
    const XReal rho2((long)box.shape.blocks());
    detail::run_ball(G, w, rho2, &budget,
                     [&](const std::vector<long long>& z, bool) {
                         guard_coeffs(z);
                         if (T.in_box(z, opts.max_bits)) visit(z);
                     });
}

} // namespace

// ----------------------------------------------------------------------
// counting
// ----------------------------------------------------------------------

long long count_points(const Lattice& L, const BoxSpec& box, const EnumOptions& opts) {
    if (detail::dioph_applicable(L, box)) return detail::dioph_count(L, box, opts);
    long long n = 0;
    for_box_points(L, box, opts, [&](const std::vector<long long>&) { ++n; });
    return n;
}

long long count_multiples(const Lattice& L, long long k, const BoxSpec& box,
                          const EnumOptions& opts) {
    if (k < 1) throw structural_error("count_multiples: k must be >= 1");
    if (detail::dioph_applicable(L, box)) return detail::dioph_count_multiples(L, k, box, opts);
    const Lattice Lk = L.scaled(mpq_class((long)k));
    long long n = 0;
    for_box_points(Lk, box, opts, [&](const std::vector<long long>& z) {
        if (!is_zero_vec(z)) ++n;
    });
    return n;
}

long long count_primitive_gcd(const Lattice& L, const BoxSpec& box, const EnumOptions& opts) {
    if (detail::dioph_applicable(L, box)) return detail::dioph_count_primitive(L, box, opts);
    long long n = 0;
    for_box_points(L, box, opts, [&](const std::vector<long long>& z) {
        if (is_zero_vec(z)) return;
        long long g = 0;
        for (long long v : z) g = ll_gcd(g, v);
        if (g == 1) ++n;
    });
    return n;
}

std::map<long long, long long> gcd_histogram(const Lattice& L, const BoxSpec& box,
                                             const EnumOptions& opts) {
    if (detail::dioph_applicable(L, box)) return detail::dioph_gcd_histogram(L, box, opts);
    std::map<long long, long long> h;
    for_box_points(L, box, opts, [&](const std::vector<long long>& z) {
        if (is_zero_vec(z)) return;
        long long g = 0;
        for (long long v : z) g = ll_gcd(g, v);
        ++h[g];
    });
    return h;
}

// ----------------------------------------------------------------------
// minima
// ----------------------------------------------------------------------

namespace {

// minimum euclidean norm over nonzero vectors of the lattice spanned by
// exact columns B (length-N each), with Gram Gx; initial radius from LLL.
MinResult min_norm_of_span(const std::vector<std::vector<XReal>>& B,
                           const std::vector<std::vector<XReal>>& Gx,
                           const EnumOptions& opts) {
    const int k = (int)B.size();
    MinResult best;
    if (k == 0) return best;

    std::vector<std::vector<double>> Bd(k);
    for (int j = 0; j < k; ++j) {
        Bd[j].resize(B[j].size());
        for (size_t i = 0; i < B[j].size(); ++i) Bd[j][i] = B[j][i].fast().mid();
    }
    const auto U = lll_transform(Bd);

    // shortest reduced column: exact norm^2 through the Gram
    auto ccoef_norm2 = [&](const std::vector<mpz_class>& u) {
        XReal acc;
        for (int a = 0; a < k; ++a) {
            if (u[a] == 0) continue;
            for (int b = 0; b < k; ++b) {
                if (u[b] == 0) continue;
                acc = acc + XReal(mpq_class(u[a] * u[b])) * Gx[a][b];
            }
        }
        return acc;
    };
    int bestj = 0;
    XReal r2 = ccoef_norm2(U[0]);
    for (int j = 1; j < k; ++j) {
        const XReal n2 = ccoef_norm2(U[j]);
        if (n2.fast().hi < r2.fast().hi) {
            r2 = n2;
            bestj = j;
        }
    }

    best.attained = true;
    XReal best_n2 = r2;
    std::vector<long long> bw(k);
    for (int a = 0; a < k; ++a) {
        if (!U[bestj][a].fits_slong_p())
            throw budget_error("reduced coefficient out of range");
        bw[a] = U[bestj][a].get_si();
    }
    best.witness = bw;

    long long budget = opts.budget;
    std::vector<XReal> w(k);   // origin
    detail::run_ball(Gx, w, r2, &budget, [&](const std::vector<long long>& z, bool) {
        if (is_zero_vec(z) || !sign_canonical(z)) return;
        guard_coeffs(z);
        // exact norm^2 of the candidate via the Gram
        XReal n2;
        for (int a = 0; a < k; ++a) {
            if (z[a] == 0) continue;
            for (int b = 0; b < k; ++b) {
                if (z[b] == 0) continue;
                n2 = n2 + XReal((long)z[a]) * XReal((long)z[b]) * Gx[a][b];
            }
        }
        const auto c = try_compare(n2, best_n2, opts.max_bits);
        if (!c)
            throw precision_error("tie between candidate minima is undecidable");
        if (*c < 0) {
            best_n2 = n2;
            best.witness = z;
        }
    });
    best.value = sqrt(best_n2);
    return best;
}

} // namespace

MinResult lambda1(const Lattice& L, const EnumOptions& opts) {
    std::vector<std::vector<XReal>> B(L.dim());
    for (int j = 0; j < L.dim(); ++j) B[j] = L.col(j);
    MinResult r = min_norm_of_span(B, L.gram(), opts);
    return r;
}

MinResult lambda1_in_subspace(const Lattice& L, const Shape& s, const EnumOptions& opts) {
    if (L.dim() != s.dim()) throw structural_error("shape and lattice dimension mismatch");
    if (s.subspace_empty()) return lambda1(L, opts);     // C = R^N
    if (s.subspace_full()) return MinResult{};           // C = {0}: empty minimum

    // constraint rows: coordinates of the I-blocks
    std::vector<std::vector<mpq_class>> rows;
    for (int blk = 0; blk < s.blocks(); ++blk) {
        if (!s.in_I[blk]) continue;
        const int o = s.offset(blk);
        for (int kk = 0; kk < s.m[blk]; ++kk) {
            std::vector<mpq_class> row(L.dim());
            for (int j = 0; j < L.dim(); ++j) {
                const XReal& e = L.entry(o + kk, j);
                if (!e.is_rational())
                    throw precision_error(
                        "lambda1 in the excluded subspace needs rational constraint rows");
                row[j] = e.rat();
            }
            rows.push_back(std::move(row));
        }
    }
    const auto K = integer_kernel(rows, L.dim());
    if (K.empty()) return MinResult{};

    // sublattice basis B_j = A K_j and its Gram K^T G K (exact)
    const int k = (int)K.size();
    const auto& G = L.gram();
    std::vector<std::vector<XReal>> B(k, std::vector<XReal>(L.dim()));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < L.dim(); ++i) {
            XReal acc;
            for (int a = 0; a < L.dim(); ++a)
                acc = acc + XReal(mpq_class(K[j][a])) * L.entry(i, a);
            B[j][i] = acc;
        }
    std::vector<std::vector<XReal>> Gk(k, std::vector<XReal>(k));
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            XReal acc;
            for (int i = 0; i < L.dim(); ++i)
                for (int j = 0; j < L.dim(); ++j)
                    acc = acc + XReal(mpq_class(K[a][i] * K[b][j])) * G[i][j];
            Gk[a][b] = acc;
            Gk[b][a] = acc;
        }
    MinResult r = min_norm_of_span(B, Gk, opts);
    if (r.attained) {
        // map the witness back to full coefficients
        std::vector<long long> zfull(L.dim(), 0);
        for (int a = 0; a < k; ++a)
            for (int i = 0; i < L.dim(); ++i) {
                const mpz_class t = K[a][i] * mpz_class((long)r.witness[a]);
                if (!t.fits_slong_p()) throw budget_error("witness out of range");
                zfull[i] += t.get_si();
            }
        r.witness = zfull;
    }
    return r;
}

std::vector<MinResult> minima_box_gauge(const Lattice& L, const std::vector<XReal>& radii,
                                        int count, const EnumOptions& opts) {
    if ((int)radii.size() != L.dim())
        throw structural_error("minima_box_gauge: need one radius per coordinate");
    if (count < 1 || count > L.dim())
        throw structural_error("minima_box_gauge: count out of range");
    const int d = L.dim();

    std::vector<XReal> rad2(d);
    for (int i = 0; i < d; ++i) rad2[i] = radii[i] * radii[i];

    for (long lam = 1; lam <= 64; lam *= 2) {
        // enumerate the box lam * B via the ball relaxation |D x|^2 <= d
        const XReal lam2((long)(lam * lam));
        std::vector<std::vector<XReal>> G(d, std::vector<XReal>(d));
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                XReal acc;
                for (int c = 0; c < d; ++c)
                    acc = acc + (L.entry(c, i) * L.entry(c, j)) / (lam2 * rad2[c]);
                G[i][j] = acc;
                G[j][i] = acc;
            }
        std::vector<XReal> w(d);
        long long budget = opts.budget;

        struct Cand {
            XReal gauge;
            std::vector<long long> z;
        };
        std::vector<Cand> cands;
        detail::run_ball(G, w, XReal((long)d), &budget,
                         [&](const std::vector<long long>& z, bool) {
                             if (is_zero_vec(z) || !sign_canonical(z)) return;
                             guard_coeffs(z);
                             const auto x = L.point(z);
                             XReal gauge = abs(x[0]) / radii[0];
                             for (int c = 1; c < d; ++c)
                                 gauge = max(gauge, abs(x[c]) / radii[c], opts.max_bits);
                             cands.push_back({gauge, z});
                         });
        std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
            const int c = compare(a.gauge, b.gauge, opts.max_bits);
            if (c != 0) return c < 0;
            return a.z < b.z;
        });

        std::vector<MinResult> out;
        std::vector<std::vector<mpz_class>> chosen;
        for (const auto& c : cands) {
            std::vector<mpz_class> zc(d);
            for (int i = 0; i < d; ++i) zc[i] = (long)c.z[i];
            auto trial = chosen;
            trial.push_back(zc);
            if (integer_rank(trial) == (int)trial.size()) {
                chosen = std::move(trial);
                MinResult m;
                m.attained = true;
                m.value = c.gauge;
                m.witness = c.z;
                out.push_back(std::move(m));
                if ((int)out.size() == count) return out;
            }
        }
        // not enough independent vectors in lam * B: enlarge
    }
    throw budget_error("minima_box_gauge: could not find enough independent vectors");
}

std::vector<long long> multiples_hitting_ball(const Lattice& L, const std::vector<XReal>& P,
                                              const XReal& R, const EnumOptions& opts) {
    if ((int)P.size() != L.dim()) throw structural_error("center has wrong dimension");
    if (sign(R) <= 0) throw structural_error("ball radius must be positive");
    const MinResult l1 = lambda1(L, opts);
    const XReal reach = R + norm(P);
    const double kmax_d = (reach / l1.value).fast().hi;
    if (!(kmax_d < 2e7)) throw budget_error("multiples sweep: k range too large");
    const long long kmax = (long long)std::floor(kmax_d);

    std::vector<long long> hits;
    const auto& G = L.gram();
    for (long long k = 1; k <= kmax; ++k) {
        // k Lambda cap B_P(R) nonzero <=> Lambda has a nonzero point in B_{P/k}(R/k)
        const XReal kk((long)k);
        std::vector<XReal> Pk(P.size());
        for (size_t i = 0; i < P.size(); ++i) Pk[i] = P[i] / kk;
        const XReal rho2 = (R * R) / (kk * kk);
        const auto w = solve_center(L, Pk);
        long long budget = opts.budget;
        bool found = false;
        try {
            detail::run_ball(G, w, rho2, &budget,
                             [&](const std::vector<long long>& z, bool certain) {
                                 if (is_zero_vec(z)) return;
                                 guard_coeffs(z);
                                 bool ok = certain;
                                 if (!ok) {
                                     // exact |x - P/k|^2 <= rho2
                                     const auto x = L.point(z);
                                     XReal d2;
                                     for (size_t i = 0; i < x.size(); ++i) {
                                         const XReal dd = x[i] - Pk[i];
                                         d2 = d2 + dd * dd;
                                     }
                                     ok = compare(d2, rho2, opts.max_bits) <= 0;
                                 }
                                 if (ok) {
                                     found = true;
                                     throw enum_stop{};
                                 }
                             });
        } catch (const enum_stop&) {
        }
        if (found) hits.push_back(k);
    }
    return hits;
}

// ----------------------------------------------------------------------
// nu staircase
// ----------------------------------------------------------------------

namespace {

// sound integer-exponent power for the double filter (base >= 0 here)
DIv dpow_ui(DIv base, unsigned long e) {
    DIv r = DIv::point(1.0);
    while (e) {
        if (e & 1) r = r * base;
        base = sqr(base);
        e >>= 1;
    }
    return r;
}

struct FrontMirror {
    DIv rho2;
    DIv nmD;
};

} // namespace

NuProfile nu_profile(const Lattice& L, const Shape& s, const XReal& rho_max,
                     const EnumOptions& opts) {
    if (L.dim() != s.dim()) throw structural_error("shape and lattice dimension mismatch");
    if (sign(rho_max) <= 0) throw structural_error("nu_profile: radius must be positive");

    NuProfile prof;
    prof.shape = s;
    prof.rho_max = rho_max;

    if (s.subspace_empty()) {   // C = R^N: nothing lies outside C
        prof.no_points_outside_C = true;
        return prof;
    }

    const bool classical = s.subspace_full();   // C = {0}: skip only the origin

    // integer exponent D with beta_i * D integral, for the sound double filter
    mpz_class Dz = 1;
    for (const auto& b : s.beta) mpz_lcm(Dz.get_mpz_t(), Dz.get_mpz_t(), b.get_den().get_mpz_t());
    const bool filter_ok = Dz.fits_sint_p() && Dz.get_si() <= 64;
    const long D = filter_ok ? Dz.get_si() : 1;

    std::vector<FrontMirror> mirror;
    auto mirror_refresh = [&]() {
        mirror.clear();
        for (const auto& st : prof.steps) {
            FrontMirror fm;
            fm.rho2 = (st.rho * st.rho).fast();
            fm.nmD = pow_i(st.nm, D).fast();
            mirror.push_back(fm);
        }
    };

    auto insert_record = [&](const XReal& rho, const XReal& nm, const std::vector<long long>& z) {
        // drop if certainly dominated
        for (const auto& st : prof.steps) {
            const auto cr = try_compare(st.rho, rho, opts.max_bits);
            const auto cn = try_compare(st.nm, nm, opts.max_bits);
            if (cr && *cr <= 0 && cn && *cn <= 0) return;
        }
        // remove records this one certainly dominates
        std::vector<NuSample> kept;
        for (auto& st : prof.steps) {
            const auto cr = try_compare(rho, st.rho, opts.max_bits);
            const auto cn = try_compare(nm, st.nm, opts.max_bits);
            if (cr && *cr <= 0 && cn && *cn <= 0) continue;
            kept.push_back(std::move(st));
        }
        prof.steps = std::move(kept);
        NuSample ns;
        ns.rho = rho;
        ns.nm = nm;
        ns.z = z;
        // keep sorted by rho (ties: insertion order)
        auto it = prof.steps.begin();
        while (it != prof.steps.end()) {
            const auto c = try_compare(it->rho, rho, opts.max_bits);
            if (c && *c > 0) break;
            ++it;
        }
        prof.steps.insert(it, std::move(ns));
        mirror_refresh();
    };

    if (detail::dioph_cf_applicable(L, s)) {
        for (const auto& rec : detail::dioph_cf_records(L, s, rho_max))
            insert_record(rec.rho, rec.nm, rec.z);
        return prof;
    }

    const auto& A = L.fast_entries();
    const int N = L.dim();
    long long budget = opts.budget;
    std::vector<XReal> w(N);   // origin

    detail::run_ball(L.gram(), w, rho_max * rho_max, &budget,
                     [&](const std::vector<long long>& z, bool) {
        if (is_zero_vec(z) || !sign_canonical(z)) return;
        guard_coeffs(z);

        // exclude C members
        if (classical) {
            // nonzero z of a nonsingular basis is never 0
        } else {
            bool outside = false;   // certainly outside C?
            bool need_exact = false;
            for (int blk = 0; blk < s.blocks() && !outside; ++blk) {
                if (!s.in_I[blk]) continue;
                DIv acc = DIv::point(0.0);
                const int o = s.offset(blk);
                for (int k = 0; k < s.m[blk]; ++k) {
                    DIv x = DIv::point(0.0);
                    for (int j = 0; j < N; ++j)
                        if (z[j]) x += A[o + k][j] * DIv::point((double)z[j]);
                    acc += sqr(x);
                }
                if (acc.lo > 0.0) outside = true;
                else need_exact = true;
            }
            if (!outside && need_exact) {
                const auto x = L.point(z);
                if (in_subspace(s, x, opts.max_bits)) return;   // x in C: skip
            }
            if (!outside && !need_exact) return;   // all I-blocks certainly zero
        }

        // double filter: compute rho^2 and nm^D hulls from the tables
        DIv rho2_d = DIv::point(0.0);
        std::vector<DIv> xs(N, DIv::point(0.0));
        for (int c = 0; c < N; ++c) {
            DIv x = DIv::point(0.0);
            for (int j = 0; j < N; ++j)
                if (z[j]) x += A[c][j] * DIv::point((double)z[j]);
            xs[c] = x;
            rho2_d += sqr(x);
        }
        if (filter_ok) {
            DIv nmD_d = DIv::point(1.0);
            for (int blk = 0; blk < s.blocks(); ++blk) {
                DIv b2 = DIv::point(0.0);
                const int o = s.offset(blk);
                for (int k = 0; k < s.m[blk]; ++k) b2 += sqr(xs[o + k]);
                // |x_blk|^{beta D} = b2^{beta D / 2}
                const mpq_class e = s.beta[blk] * D;   // integer
                const unsigned long ei = e.get_num().get_ui();
                if (ei % 2 == 0) {
                    nmD_d = nmD_d * dpow_ui(b2, ei / 2);
                } else {
                    nmD_d = nmD_d * dpow_ui(sqrt(b2), ei);
                }
            }
            for (const auto& fm : mirror) {
                if (fm.rho2.hi <= rho2_d.lo && fm.nmD.hi <= nmD_d.lo) return;  // dominated
            }
        }

        // survivor: exact insert
        const auto x = L.point(z);
        insert_record(norm(x), nm_beta(s, x), z);
    });

    if (prof.steps.empty()) prof.no_points_outside_C = true;
    return prof;
}

NuProfile::Query NuProfile::min_nm_below(const XReal& rho, mpfr_prec_t max_bits) const {
    {
        const auto c = try_compare(rho, rho_max, max_bits);
        if (c && *c > 0)
            throw structural_error("nu query beyond the built profile horizon");
        // undecidable vs the horizon: only exact ties occur in practice; an
        // actual overshoot would be caught by the certified check above
    }
    Query q;
    double lo = std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool any_possible = false, any_certain = false;
    for (const auto& st : steps) {
        const auto c = try_compare(st.rho, rho, max_bits);
        if (c && *c >= 0) continue;          // certainly at or beyond rho: strict excludes
        const DIv nm = st.nm.fast();
        any_possible = true;
        lo = std::min(lo, nm.lo);
        if (c && *c < 0) {
            any_certain = true;
            if (nm.hi < hi) {
                hi = nm.hi;
                q.arg = &st;
            }
        }
    }
    if (!any_possible) return q;   // empty: infimum over the empty set
    q.empty = false;
    q.nm = DIv::checked(std::min(lo, hi), any_certain ? hi : std::numeric_limits<double>::infinity());
    return q;
}

NuProfile::Query NuProfile::nu_below(const XReal& rho, mpfr_prec_t max_bits) const {
    Query q = min_nm_below(rho, max_bits);
    if (q.empty) return q;
    const mpq_class t = shape.t();
    const mpq_class inv_t = 1 / t;
    Iv base = Iv::from_endpoints_d(std::max(0.0, q.nm.lo),
                                   q.nm.hi, 64);
    if (!std::isfinite(q.nm.hi)) {
        // lower endpoint only
        Iv lo_only = pow_q(Iv::from_d(std::max(0.0, q.nm.lo), 64), inv_t);
        q.nm = DIv::checked(lo_only.dlo(), std::numeric_limits<double>::infinity());
        return q;
    }
    q.nm = pow_q(base, inv_t).hull_d();
    return q;
}

NuProfile::Query mu_value(const NuProfile& prof, const MinResult& lambda1_C,
                          const XReal& rho, mpfr_prec_t max_bits) {
    NuProfile::Query nu = prof.nu_below(rho, max_bits);
    if (lambda1_C.attained) {
        const DIv lam = lambda1_C.value.fast();
        if (nu.empty) {
            nu.empty = false;
            nu.nm = lam;
            nu.arg = nullptr;
        } else {
            if (lam.hi <= nu.nm.lo) nu.arg = nullptr;   // the subspace minimum wins
            nu.nm = DIv::checked(std::min(nu.nm.lo, lam.lo), std::min(nu.nm.hi, lam.hi));
        }
    }
    return nu;
}

} // namespace weakadm
