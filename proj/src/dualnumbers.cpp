#include "kul/dualnumbers.hpp"

#include <sstream>

namespace kul::dual {

Lam lmul(const Lam& a, const Lam& b, u32 p) {
    return {fmul(a[0], b[0], p), fadd(fmul(a[0], b[1], p), fmul(a[1], b[0], p), p)};
}
Lam ladd(const Lam& a, const Lam& b, u32 p) { return {fadd(a[0], b[0], p), fadd(a[1], b[1], p)}; }
Lam lscale(const Lam& a, u32 c, u32 p) { return {fmul(a[0], c, p), fmul(a[1], c, p)}; }

std::string to_string(const Interval& a) {
    std::ostringstream os;
    os << "[" << a.m << "," << a.n << "]";
    return os.str();
}

Cx shifted(const Interval& b, int t) { return {b.m - t, b.n - t, (t % 2 == 0) ? 1 : -1}; }

Lam ChainMap::at(int i) const {
    auto it = comp.find(i);
    return it == comp.end() ? Lam{0, 0} : it->second;
}

namespace {
u32 sgn(int s, u32 p) { return s > 0 ? 1 : p - 1; }
}  // namespace

bool is_chain_map(const ChainMap& f, u32 p) {
    for (const auto& [i, v] : f.comp)
        if ((v[0] || v[1]) && !(f.src.has(i) && f.tgt.has(i))) return false;
    // d_Y f^i = f^{i+1} d_X on X^i -> Y^{i+1}; only x-coefficients can survive
    for (int i = std::min(f.src.m, f.tgt.m) - 1; i <= std::max(f.src.n, f.tgt.n); ++i) {
        u32 lhs = 0, rhs = 0;
        if (f.tgt.has(i) && f.tgt.has(i + 1)) lhs = fmul(sgn(f.tgt.s, p), f.at(i)[0], p);
        if (f.src.has(i) && f.src.has(i + 1)) rhs = fmul(sgn(f.src.s, p), f.at(i + 1)[0], p);
        if (lhs != rhs) return false;
    }
    return true;
}

HomBasis hom_basis(const Interval& a, const Interval& b, int t) {
    HomBasis h;
    int M = b.m - t, N = b.n - t;
    if (a.m == M && a.n == N) {
        h.has_id = h.has_x = true;
        h.id_lo = a.m, h.id_hi = a.n, h.x_deg = a.n;
    } else if (std::max(a.m, M) > std::min(a.n, N)) {
    } else if (a.m <= M && a.n <= N) {
        h.has_x = true, h.x_deg = a.n;
    } else if (a.m >= M && a.n >= N) {
        h.has_id = true, h.id_lo = a.m, h.id_hi = N;
    }
    return h;
}

std::string to_string(const Morphism& f) {
    std::ostringstream os;
    os << to_string(f.src) << "->S^" << f.t << to_string(f.tgt) << ": " << f.c_id << "*Id + " << f.c_x << "*x";
    return os.str();
}

ChainMap generator_chain(const Interval& a, const Interval& b, int t, bool id_type, u32 p) {
    HomBasis h = hom_basis(a, b, t);
    ChainMap c{{a.m, a.n, 1}, shifted(b, t), {}};
    if (id_type) {
        if (!h.has_id) throw CategoryError("no Id-type generator in this hom space");
        for (int i = h.id_lo; i <= h.id_hi; ++i) c.comp[i] = {sign_pow(static_cast<long long>(t) * (i - h.id_lo), p), 0};
    } else {
        if (!h.has_x) throw CategoryError("no x-type generator in this hom space");
        c.comp[h.x_deg] = {0, 1};
    }
    return c;
}

ChainMap to_chain(const Morphism& f, u32 p) {
    HomBasis h = hom_basis(f.src, f.tgt, f.t);
    ChainMap c{{f.src.m, f.src.n, 1}, shifted(f.tgt, f.t), {}};
    auto add = [&](const ChainMap& g, u32 k) {
        for (const auto& [i, v] : g.comp) c.comp[i] = ladd(c.at(i), lscale(v, k, p), p);
    };
    if (h.has_id && f.c_id) add(generator_chain(f.src, f.tgt, f.t, true, p), f.c_id);
    if (h.has_x && f.c_x) add(generator_chain(f.src, f.tgt, f.t, false, p), f.c_x);
    return c;
}

Morphism compose(const Morphism& f, const Morphism& g, u32 p) {
    if (!(f.tgt == g.src)) throw CategoryError("compose: objects do not match");
    const int t1 = f.t, t2 = g.t, t = t1 + t2;
    HomBasis hf = hom_basis(f.src, f.tgt, t1), hg = hom_basis(g.src, g.tgt, t2), hr = hom_basis(f.src, g.tgt, t);
    Morphism r{f.src, g.tgt, t, 0, 0};
    u32 fid = hf.has_id ? f.c_id : 0, fx = hf.has_x ? f.c_x : 0;
    u32 gid = hg.has_id ? g.c_id : 0, gx = hg.has_x ? g.c_x : 0;

    if (fid && gid) {
        int lo = std::max(hf.id_lo, hg.id_lo - t1), hi = std::min(hf.id_hi, hg.id_hi - t1);
        if (lo <= hi) {
            if (!hr.has_id || hr.id_lo != lo || hr.id_hi != hi) throw CategoryError("compose: Id support mismatch");
            long long e = static_cast<long long>(t1) * (lo - hf.id_lo) + static_cast<long long>(t2) * (lo + t1 - hg.id_lo);
            r.c_id = fmul(fmul(fid, gid, p), sign_pow(e, p), p);
        }
    }
    // x at source degree k in Hom(a, S^t c): walk up with the homotopies until it hits the top
    Cx T = shifted(g.tgt, t);
    auto reduce_x = [&](int k, u32 c) {
        while (true) {
            if (k == f.src.n) {
                if (hr.has_x && hr.x_deg == k) r.c_x = fadd(r.c_x, c, p);
                return;
            }
            if (!T.has(k + 1)) return;
            c = fmul(c, sgn(-T.s, p), p);
            ++k;
        }
    };
    if (fx && gid) {
        int k = hf.x_deg;
        if (k + t1 >= hg.id_lo && k + t1 <= hg.id_hi)
            reduce_x(k, fmul(fmul(fx, gid, p), sign_pow(static_cast<long long>(t2) * (k + t1 - hg.id_lo), p), p));
    }
    if (fid && gx) {
        int i = hg.x_deg - t1;
        if (i >= hf.id_lo && i <= hf.id_hi)
            reduce_x(i, fmul(fmul(fid, gx, p), sign_pow(static_cast<long long>(t1) * (i - hf.id_lo), p), p));
    }
    return r;
}

ChainMap chain_compose(const ChainMap& f, const ChainMap& g, int t, u32 p) {
    Cx tgt{g.tgt.m - t, g.tgt.n - t, (t % 2 == 0) ? g.tgt.s : -g.tgt.s};
    ChainMap c{f.src, tgt, {}};
    for (const auto& [i, v] : f.comp) {
        Lam w = lmul(g.at(i + t), v, p);
        if (w[0] || w[1]) c.comp[i] = w;
    }
    return c;
}

// ---- oracle ----

Vec OracleHom::coords(const ChainMap& f) const {
    std::size_t n = lo <= hi ? 2 * static_cast<std::size_t>(hi - lo + 1) : 0;
    Vec v(n, 0);
    for (const auto& [i, c] : f.comp) {
        if (!c[0] && !c[1]) continue;
        if (i < lo || i > hi) throw CategoryError("chain map component outside the common support");
        v[2 * (i - lo)] = c[0], v[2 * (i - lo) + 1] = c[1];
    }
    return v;
}

ChainMap OracleHom::chain(const Vec& v) const {
    ChainMap c{src, tgt, {}};
    for (int i = lo; i <= hi; ++i) {
        Lam w{v[2 * (i - lo)], v[2 * (i - lo) + 1]};
        if (w[0] || w[1]) c.comp[i] = w;
    }
    return c;
}

OracleHom oracle_hom(const Cx& S, const Cx& T, u32 p) {
    OracleHom o;
    o.src = S, o.tgt = T;
    o.lo = std::max(S.m, T.m), o.hi = std::min(S.n, T.n);
    std::size_t n = o.lo <= o.hi ? 2 * static_cast<std::size_t>(o.hi - o.lo + 1) : 0;
    auto both = [&](int i) { return S.has(i) && T.has(i); };
    auto c0 = [&](int i) { return 2 * static_cast<std::size_t>(i - o.lo); };
    std::vector<Vec> rows;
    for (int i = o.lo - 1; i <= o.hi; ++i) {
        Vec r(n, 0);
        if (both(i) && T.has(i + 1)) r[c0(i)] = fadd(r[c0(i)], sgn(T.s, p), p);
        if (both(i + 1) && S.has(i)) r[c0(i + 1)] = fsub(r[c0(i + 1)], sgn(S.s, p), p);
        if (!vzero(r)) rows.push_back(r);
    }
    o.cycles = rows.empty() ? Subspace::full(p, n) : kernel(MatrixFp::from_rows(p, n, rows));
    // homotopy h^j: S^j -> T^{j-1} with unit constant term
    std::vector<Vec> gens;
    for (int j = S.m; j <= S.n; ++j) {
        if (!T.has(j - 1)) continue;
        Vec v(n, 0);
        if (T.has(j)) v[c0(j) + 1] = fadd(v[c0(j) + 1], sgn(T.s, p), p);
        if (S.has(j - 1)) v[c0(j - 1) + 1] = fadd(v[c0(j - 1) + 1], sgn(S.s, p), p);
        if (!vzero(v)) gens.push_back(v);
    }
    o.bounds = Subspace::span(p, n, gens);
    o.q = Quotient(o.cycles, o.bounds);
    return o;
}

OracleHom oracle_hom(const Interval& a, const Interval& b, int t, u32 p) {
    return oracle_hom(Cx{a.m, a.n, 1}, shifted(b, t), p);
}

Morphism reduce(const ChainMap& f, const Interval& a, const Interval& b, int t, u32 p) {
    OracleHom o = oracle_hom(a, b, t, p);
    Vec v = o.coords(f);
    if (!contains(o.cycles, v)) throw CategoryError("reduce: not a chain map");
    HomBasis h = hom_basis(a, b, t);
    std::vector<Vec> cols;
    if (h.has_id) cols.push_back(o.coords(generator_chain(a, b, t, true, p)));
    if (h.has_x) cols.push_back(o.coords(generator_chain(a, b, t, false, p)));
    for (const Vec& w : o.bounds.vectors()) cols.push_back(w);
    Morphism r{a, b, t, 0, 0};
    if (cols.empty()) return r;
    MatrixFp m(p, v.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    Vec sol = solve(m, v);
    std::size_t k = 0;
    if (h.has_id) r.c_id = sol[k++];
    if (h.has_x) r.c_x = sol[k++];
    return r;
}

// ---- skeleton ----

Interval skeleton_object(int l) { return {-l, 0}; }

Vec skeleton_coords(const Morphism& f) {
    HomBasis h = hom_basis(f.src, f.tgt, f.t);
    Vec v;
    if (h.has_id) v.push_back(f.c_id);
    if (h.has_x) v.push_back(f.c_x);
    return v;
}

namespace {
Morphism from_coords(const Interval& a, const Interval& b, int t, const Vec& v) {
    HomBasis h = hom_basis(a, b, t);
    if (v.size() != h.dim()) throw DimensionError("skeleton: coordinate vector has the wrong length");
    Morphism f{a, b, t, 0, 0};
    std::size_t k = 0;
    if (h.has_id) f.c_id = v[k++];
    if (h.has_x) f.c_x = v[k++];
    return f;
}
}  // namespace

GradedCategory skeleton(u32 p, int W, int D) {
    if (W < 0) throw CategoryError("skeleton: negative window");
    std::vector<std::string> names;
    std::vector<Vec> ids;
    for (int l = 0; l <= W; ++l) {
        names.push_back("D" + std::to_string(l));
        Interval o = skeleton_object(l);
        ids.push_back(skeleton_coords(Morphism{o, o, 0, 1, 0}));
    }
    auto dims = [](std::size_t x, std::size_t y, int n) {
        return hom_basis(skeleton_object(static_cast<int>(x)), skeleton_object(static_cast<int>(y)), n).dim();
    };
    auto comp = [p](std::size_t x, std::size_t y, std::size_t z, int i, int j, const Vec& f, const Vec& g) {
        Interval a = skeleton_object(static_cast<int>(x)), b = skeleton_object(static_cast<int>(y)),
                 c = skeleton_object(static_cast<int>(z));
        return skeleton_coords(compose(from_coords(a, b, i, f), from_coords(b, c, j, g), p));
    };
    // nonzero homs only in degrees |n| <= W
    return GradedCategory(p, names, D, W, dims, comp, ids);
}

std::size_t center_model_dim(int t, int W, u32 p) {
    if (t == 0) return 1 + static_cast<std::size_t>(W + 1);
    if (t < 0 || t > W) return 0;
    return (p == 2 || t % 2 == 0) ? 1 : 0;
}

std::size_t ab_model_dim(int t, int W, u32 p) {
    if (t == 0) return static_cast<std::size_t>(W + 2);
    if (t > 0 || -t > W) return 0;
    return (p == 2 || t % 2 == 0) ? 1 : 0;
}

// ---- traces ----

Lam hattori_stallings(const ChainMap& f, u32 p) {
    Lam s{0, 0};
    for (const auto& [i, v] : f.comp) s = ladd(s, lscale(v, sign_pow(i, p), p), p);
    return s;
}

TraceData skeleton_trace(const GradedCategory& sk) {
    TraceData td;
    td.d = 0;
    u32 p = sk.p();
    for (std::size_t x = 0; x < sk.num_objects(); ++x) {
        Interval o = skeleton_object(static_cast<int>(x));
        std::size_t d = sk.hom_dim(x, x, 0);
        Vec tr(d, 0);
        for (std::size_t k = 0; k < d; ++k)
            tr[k] = hattori_stallings(to_chain(from_coords(o, o, 0, unit_vec(d, k)), p), p)[1];
        td.tr.push_back(tr);
    }
    return td;
}

Vec phi(const GradedCategory& sk, const Lam& a) {
    Vec v(sk.endo_dim(0), 0);
    std::size_t off = sk.endo_offset(0, 0);
    v[off] = a[0], v[off + 1] = a[1];
    return v;
}

Ab0Report ab0_decomposition(u32 p, int W) {
    GradedInvariants inv(skeleton(p, W, W));
    const GradedCategory& sk = inv.category();
    const Quotient& q = inv.ab(0).q;
    Ab0Report r;
    r.ab0 = q.dim();
    std::vector<Vec> ph, cv;
    bool ok = true;
    for (Lam a : {Lam{1, 0}, Lam{0, 1}, Lam{2 % p, 1}}) {
        Vec v = phi(sk, a);
        ph.push_back(q.project(v));
        Interval o = skeleton_object(0);
        ok = ok && hattori_stallings(to_chain(from_coords(o, o, 0, sk.endo_part(v, 0, 0)), p), p) == a;
    }
    for (std::size_t x = 1; x < sk.num_objects(); ++x)
        cv.push_back(q.project(unit_vec(sk.endo_dim(0), sk.endo_offset(x, 0))));  // 1_x; Id is the first coordinate
    Subspace im = Subspace::span(p, q.dim(), ph), c = Subspace::span(p, q.dim(), cv);
    r.im_phi = im.dim();
    r.c_objects = c.dim();
    r.sum = sum(im, c).dim();
    r.intersection = intersect(im, c).dim();
    r.tr_phi_identity = ok;
    return r;
}

}  // namespace kul::dual
