// bicomplex model of Lambda^[-n,0] (x)^L Lambda, the characteristic map and the ideal tables
#include "kul/dualnumbers.hpp"

namespace kul::dual {

bool LMat::is_zero() const {
    for (const Lam& v : a)
        if (v[0] || v[1]) return false;
    return true;
}

LMat lmat_mul(const LMat& x, const LMat& y, u32 p) {
    if (x.cols != y.rows) throw DimensionError("lmat_mul: shapes");
    LMat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Lam& a = x(i, k);
            if (!a[0] && !a[1]) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) = ladd(r(i, j), lmul(a, y(k, j), p), p);
        }
    return r;
}

LMat lmat_sub(const LMat& x, const LMat& y, u32 p) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionError("lmat_sub: shapes");
    LMat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = ladd(x.a[i], lscale(y.a[i], p - 1, p), p);
    return r;
}

LMat lmat_scale(const LMat& x, u32 c, u32 p) {
    LMat r = x;
    for (Lam& v : r.a) v = lscale(v, c, p);
    return r;
}

LMat tensor_block(Tensor t, u32 p) {
    (void)p;
    LMat b(2, 2);
    switch (t) {
        case Tensor::one: b(0, 0) = {1, 0}, b(1, 1) = {1, 0}; break;
        case Tensor::x_left: b(1, 0) = {1, 0}; break;  // (alpha, beta) -> (0, alpha)
        case Tensor::x_right: b(0, 0) = {0, 1}, b(1, 1) = {0, 1}; break;
    }
    return b;
}

namespace {

void put_block(LMat& m, std::size_t bi, std::size_t bj, const LMat& b) {
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) m(2 * bi + r, 2 * bj + c) = b(r, c);
}

LMat d_pm(int sign, u32 p) {
    LMat x = tensor_block(Tensor::x_left, p), y = tensor_block(Tensor::x_right, p);
    return sign > 0 ? lmat_sub(x, lmat_scale(y, p - 1, p), p) : lmat_sub(x, y, p);
}

LMat identity_lmat(std::size_t n) {
    LMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = {1, 0};
    return m;
}

bool lmat_eq(const LMat& a, const LMat& b) { return a.rows == b.rows && a.cols == b.cols && a.a == b.a; }

LMat lmat_scale_lam(const LMat& x, const Lam& c, u32 p) {
    LMat r = x;
    for (Lam& v : r.a) v = lmul(v, c, p);
    return r;
}

int ceil_half(int c) { return (c + 1) / 2; }

}  // namespace

Bicomplex build_bicomplex(int n, int i_max, u32 p) {
    if (n < 0 || i_max < 0) throw CategoryError("bicomplex: negative size");
    Bicomplex b;
    b.n = n, b.i_max = i_max;
    b.d.resize(static_cast<std::size_t>(i_max) + 1);
    for (int i = 1; i <= i_max; ++i) {
        std::size_t src = b.summands(i), tgt = b.summands(i - 1);
        LMat d(2 * tgt, 2 * src);
        for (std::size_t k = 1; k <= tgt; ++k) {
            put_block(d, k - 1, k - 1, d_pm((i + static_cast<int>(k) - 1) % 2 == 0 ? 1 : -1, p));
            if (k + 1 <= src)
                put_block(d, k - 1, k, lmat_scale(tensor_block(Tensor::x_left, p), sign_pow(i + static_cast<int>(k), p), p));
        }
        b.d[static_cast<std::size_t>(i)] = d;
    }
    return b;
}

namespace {
// iota, pi with the solved x_2 signs, and the chain map checks; no homotopy
IotaPi iota_pi_maps(int n, u32 p, const Bicomplex& b) {
    IotaPi r;
    r.n = n;
    const Lam X{0, 1};
    for (int i = 0; i <= n; ++i) {
        std::size_t s = b.summands(i);
        LMat io(2 * s, 1), pi(1, 2 * s);
        for (std::size_t k = 1; k <= s; ++k) io(2 * (k - 1), 0) = {sign_pow(ceil_half(i - static_cast<int>(k) + 1), p), 0};
        pi(0, 0) = {sign_pow(ceil_half(i), p), 0};
        r.iota.push_back(io);
        r.pi.push_back(pi);
    }

    // pi_{-n}: solve for the coefficients in front of x_2 so that pi is a chain map
    auto residual = [&](const LMat& top) {
        std::vector<LMat> parts;
        if (n >= 1) parts.push_back(lmat_sub(lmat_mul(r.pi[n - 1], b.d[n], p), lmat_scale_lam(top, X, p), p));
        parts.push_back(lmat_mul(top, b.d[n + 1], p));
        Vec v;
        for (const LMat& m : parts)
            for (const Lam& e : m.a) v.push_back(e[0]), v.push_back(e[1]);
        return v;
    };
    std::size_t sn = b.summands(n);
    LMat base = r.pi[n];
    Vec r0 = residual(base);
    MatrixFp m(p, r0.size(), sn);
    for (std::size_t k = 0; k < sn; ++k) {
        LMat e = base;
        e(0, 2 * k + 1) = ladd(e(0, 2 * k + 1), X, p);
        m.set_col(k, vsub(residual(e), r0, p));
    }
    Vec rhs = vscale(r0, p - 1, p);
    if (!solvable(m, rhs)) throw CategoryError("iota_pi: no signs make pi a chain map");
    if (kernel(m).dim() != 0) throw CategoryError("iota_pi: the x_2 coefficients are not determined");
    Vec c = solve(m, rhs);
    for (std::size_t k = 0; k < sn; ++k) {
        r.pi[n](0, 2 * k + 1) = {0, c[k]};
        r.x2_signs.push_back(c[k] == 1 ? 1 : (c[k] == p - 1 ? -1 : 0));
    }

    // chain map checks
    r.iota_chain = true;
    for (int i = 1; i <= n; ++i)
        r.iota_chain = r.iota_chain && lmat_eq(lmat_mul(b.d[i], r.iota[i], p), lmat_scale_lam(r.iota[i - 1], X, p));
    r.pi_chain = vzero(residual(r.pi[n]));
    for (int i = 1; i < n; ++i)
        r.pi_chain = r.pi_chain && lmat_eq(lmat_scale_lam(r.pi[i], X, p), lmat_mul(r.pi[i - 1], b.d[i], p));
    r.pi_iota_identity = true;
    for (int i = 0; i <= n; ++i) r.pi_iota_identity = r.pi_iota_identity && lmat_eq(lmat_mul(r.pi[i], r.iota[i], p), identity_lmat(1));

    return r;
}
}  // namespace

IotaPi iota_pi(int n, u32 p) {
    const int i_max = n + 3;
    Bicomplex b = build_bicomplex(n, i_max, p);
    IotaPi r = iota_pi_maps(n, p, b);

    // iota pi ~ Id: H_i: C^{-i} -> C^{-i-1}, Id - iota pi = d H_i + H_{i-1} d on degrees 0..i_max-1
    std::vector<std::size_t> uoff, eoff;
    std::size_t nu = 0, ne = 0;
    for (int i = 0; i < i_max; ++i) {
        uoff.push_back(nu);
        nu += 2 * (2 * b.summands(i + 1)) * (2 * b.summands(i));
        eoff.push_back(ne);
        ne += 2 * (2 * b.summands(i)) * (2 * b.summands(i));
    }
    MatrixFp h(p, ne, nu);
    Vec target(ne, 0);
    for (int i = 0; i < i_max; ++i) {
        std::size_t dim = 2 * b.summands(i);
        LMat rhs_i = identity_lmat(dim);
        if (i <= n) rhs_i = lmat_sub(rhs_i, lmat_mul(r.iota[i], r.pi[i], p), p);
        for (std::size_t q = 0; q < dim; ++q)
            for (std::size_t c2 = 0; c2 < dim; ++c2)
                for (int e = 0; e < 2; ++e) target[eoff[i] + 2 * (q * dim + c2) + e] = rhs_i(q, c2)[e];
    }
    for (int i = 0; i < i_max; ++i) {
        std::size_t rows = 2 * b.summands(i + 1), cols = 2 * b.summands(i);
        const LMat& dn = b.d[i + 1];  // C^{-i-1} -> C^{-i}
        for (std::size_t rr = 0; rr < rows; ++rr)
            for (std::size_t cc = 0; cc < cols; ++cc)
                for (int e = 0; e < 2; ++e) {
                    std::size_t col = uoff[i] + 2 * (rr * cols + cc) + e;
                    Lam u{e == 0 ? 1u : 0u, e == 1 ? 1u : 0u};
                    // d_{i+1} H_i in equation i
                    for (std::size_t q = 0; q < cols; ++q) {
                        Lam v = lmul(dn(q, rr), u, p);
                        for (int f = 0; f < 2; ++f) {
                            u32& slot = h(eoff[i] + 2 * (q * cols + cc) + f, col);
                            slot = fadd(slot, v[f], p);
                        }
                    }
                    // H_i d_{i+1} in equation i+1
                    if (i + 1 < i_max)
                        for (std::size_t c2 = 0; c2 < rows; ++c2) {
                            Lam v = lmul(u, dn(cc, c2), p);
                            for (int f = 0; f < 2; ++f) {
                                u32& slot = h(eoff[i + 1] + 2 * (rr * rows + c2) + f, col);
                                slot = fadd(slot, v[f], p);
                            }
                        }
                }
    }
    r.iota_pi_homotopic = solvable(h, target);
    return r;
}

ChainMap chi_chain(int l, HHGen g, int n, u32 p, bool right_x) {
    if (l < 0 || n < 0) throw CategoryError("chi: negative degree or length");
    Bicomplex b = build_bicomplex(n, n + l + 2, p);
    IotaPi ip = iota_pi_maps(n, p, b);
    LMat f = g == HHGen::one ? tensor_block(Tensor::one, p)
                             : tensor_block(right_x ? Tensor::x_right : Tensor::x_left, p);
    // F_i: C^{-i} -> C^{-i+l}, f on every summand of resolution degree >= l
    auto F = [&](int i) {
        std::size_t s = b.summands(i), t = i - l >= 0 ? b.summands(i - l) : 0;
        LMat m(2 * t, 2 * s);
        for (std::size_t k = 1; k <= t; ++k) put_block(m, k - 1, k - 1, f);
        return m;
    };
    u32 sg = sign_pow(l, p);
    for (int i = l + 1; i <= b.i_max; ++i)
        if (!lmat_eq(lmat_mul(F(i - 1), b.d[i], p), lmat_scale(lmat_mul(b.d[i - l], F(i), p), sg, p)))
            throw CategoryError("chi: the generator is not a cocycle in this degree");
    ChainMap c{{-n, 0, 1}, shifted(Interval{-n, 0}, l), {}};
    for (int i = l; i <= n; ++i) {
        LMat v = lmat_mul(ip.pi[i - l], lmat_mul(F(i), ip.iota[i], p), p);
        if (v(0, 0)[0] || v(0, 0)[1]) c.comp[-i] = v(0, 0);
    }
    return c;
}

Morphism chi(int l, HHGen g, const Interval& target, u32 p, bool right_x) {
    int n = target.length();
    Interval d{-n, 0};
    Morphism m = reduce(chi_chain(l, g, n, p, right_x), d, d, l, p);
    m.src = m.tgt = target;
    return m;
}

HHForm hh_closed_form(int l, u32 p) {
    if (l < 0) throw CategoryError("hh: negative degree");
    if (l == 0) return {"Lambda", 2, {HHGen::one, HHGen::x}};
    if (p == 2) {
        if (l % 2 == 0) return {"Lambda/2xLambda = Lambda", 2, {HHGen::one, HHGen::x}};
        return {"Ann(2x) = Lambda", 2, {HHGen::one, HHGen::x}};
    }
    if (l % 2 == 0) return {"Lambda/2xLambda = k", 1, {HHGen::one}};
    return {"Ann(2x) = xLambda", 1, {HHGen::x}};
}

// ---- tables ----

std::string to_string(Kind k) {
    switch (k) {
        case Kind::zero: return "0";
        case Kind::full: return "Z^t";
        case Kind::tilde_z0: return "tildeZ0";
        case Kind::span: return "span";
    }
    return "?";
}

namespace {
int table_window(u32 p, int W) { return W + 9 * static_cast<int>(p * p) + 1; }
}  // namespace

Tables::Tables(u32 p, int W) : p_(p), W_(W), inv_(skeleton(p, W, table_window(p, W))) {}

bool Tables::certified(int s, int t) const { return std::max({std::abs(s - t), std::abs(t), std::abs(s)}) < W_; }

Subspace Tables::tilde_z0() {
    const GradedCategory& sk = category();
    std::vector<Vec> xs;
    for (std::size_t x = 0; x < sk.num_objects(); ++x) xs.push_back(unit_vec(sk.endo_dim(0), sk.endo_offset(x, 0) + 1));
    return intersect(inv_.center(0).space, Subspace::span(p_, sk.endo_dim(0), xs));
}

Kind Tables::classify(const Subspace& k, int t) {
    if (k.dim() == 0) return Kind::zero;
    if (k == inv_.center(t).space) return Kind::full;
    if (t == 0 && k == tilde_z0()) return Kind::tilde_z0;
    return Kind::span;
}

Subspace Tables::space_of(Kind k, int t) {
    switch (k) {
        case Kind::zero: return Subspace::zero(p_, category().endo_dim(t));
        case Kind::full: return inv_.center(t).space;
        case Kind::tilde_z0:
            if (t != 0) throw CategoryError("tildeZ0 lives in degree 0");
            return tilde_z0();
        case Kind::span: break;
    }
    throw CategoryError("space_of: no fixed subspace for this label");
}

TableCell Tables::k_rs(unsigned r, int s, int t) {
    Subspace k = inv_.k_rs_degree(r, s, t);
    return {p_, r, s, t, classify(k, t), k.dim(), certified(s, t)};
}

Vec Tables::chi_family(int l, HHGen g) {
    const GradedCategory& sk = category();
    Vec v(sk.endo_dim(l), 0);
    for (std::size_t x = 0; x < sk.num_objects(); ++x) {
        Vec c = skeleton_coords(chi(l, g, skeleton_object(static_cast<int>(x)), p_));
        std::size_t off = sk.endo_offset(x, l);
        for (std::size_t k = 0; k < c.size(); ++k) v[off + k] = c[k];
    }
    return v;
}

Subspace Tables::hk(unsigned r, int s, int l) {
    HHForm h = hh_closed_form(l, p_);
    Subspace k = inv_.k_rs_degree(r, s, l);
    MatrixFp m(p_, category().endo_dim(l), h.basis.size());
    for (std::size_t j = 0; j < h.basis.size(); ++j) m.set_col(j, chi_family(l, h.basis[j]));
    return preimage(m, k);
}

Kind expected_k_rs(u32 p, int s, int t) {
    if (t < 0) return Kind::zero;
    if (s > 0) return Kind::full;
    if (p != 2 && (s - t) % 2 != 0) return Kind::full;
    if (t == 0) return Kind::tilde_z0;
    return Kind::zero;
}

Subspace expected_hk(u32 p, int s, int l) {
    HHForm h = hh_closed_form(l, p);
    std::size_t d = h.dim;
    if (s > 0) return Subspace::full(p, d);
    if (p != 2 && s % 2 != 0) return Subspace::full(p, d);
    if (p != 2 && l > 0) return l % 2 ? Subspace::full(p, d) : Subspace::zero(p, d);
    return Subspace::span(p, d, {unit_vec(d, 1)});  // <x>, x is the second basis element
}

}  // namespace kul::dual
