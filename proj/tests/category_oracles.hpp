#pragma once
// direct computations on a finite category C with automorphism sigma, bypassing the orbit category

#include "kul/graded_category.hpp"
#include "oracles.hpp"

namespace oracle {

inline CatAutomorphism sigma_power(const CatAutomorphism& s, int n) {
    CatAutomorphism step = n >= 0 ? s : s.inverse();
    CatAutomorphism acc;
    acc.obj = s.obj;
    for (std::size_t x = 0; x < s.obj.size(); ++x) acc.obj[x] = x;
    acc.hom = s.hom;
    for (std::size_t x = 0; x < s.obj.size(); ++x)
        for (std::size_t y = 0; y < s.obj.size(); ++y) acc.hom[x][y] = MatrixFp::identity(s.hom[x][y].p, s.hom[x][y].cols);
    for (int k = 0; k < std::abs(n); ++k) acc = acc.then(step);
    return acc;
}

struct DirectSpace {
    std::vector<std::size_t> off;  // offset of the x-component of sum_x C(x, S^n x)
    std::size_t dim = 0;
};

inline DirectSpace direct_space(const FiniteCategory& c, const CatAutomorphism& sn) {
    DirectSpace d;
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
        d.off.push_back(d.dim);
        d.dim += c.hom_dim(x, sn.obj[x]);
    }
    return d;
}

// natural transformations Id -> S^n, optionally with eta_{Sx} = (-1)^n S(eta_x)
inline Subspace direct_nat(const FiniteCategory& c, const CatAutomorphism& s, int n, bool z_condition) {
    u32 p = c.p();
    CatAutomorphism sn = sigma_power(s, n);
    DirectSpace sp = direct_space(c, sn);
    std::size_t N = c.num_objects();
    std::vector<Vec> rows;
    auto add_rows = [&](const MatrixFp& m) {
        for (std::size_t r = 0; r < m.rows; ++r) rows.push_back(m.row(r));
    };
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y)
            for (std::size_t k = 0; k < c.hom_dim(x, y); ++k) {
                Vec f = unit_vec(c.hom_dim(x, y), k);
                Vec snf = sn.hom[x][y].apply(f);
                std::size_t tgt = c.hom_dim(x, sn.obj[y]);
                MatrixFp m(p, tgt, sp.dim);
                for (std::size_t a = 0; a < c.hom_dim(x, sn.obj[x]); ++a) {
                    Vec v = c.compose(x, sn.obj[x], sn.obj[y], unit_vec(c.hom_dim(x, sn.obj[x]), a), snf);
                    for (std::size_t r = 0; r < tgt; ++r) m(r, sp.off[x] + a) = fadd(m(r, sp.off[x] + a), v[r], p);
                }
                for (std::size_t b = 0; b < c.hom_dim(y, sn.obj[y]); ++b) {
                    Vec v = c.compose(x, y, sn.obj[y], f, unit_vec(c.hom_dim(y, sn.obj[y]), b));
                    for (std::size_t r = 0; r < tgt; ++r) m(r, sp.off[y] + b) = fsub(m(r, sp.off[y] + b), v[r], p);
                }
                add_rows(m);
            }
    if (z_condition)
        for (std::size_t x = 0; x < N; ++x) {
            std::size_t sx = s.obj[x];
            std::size_t d = c.hom_dim(sx, sn.obj[sx]);
            MatrixFp m(p, d, sp.dim);
            const MatrixFp& sh = s.hom[x][sn.obj[x]];
            u32 sg = sign_pow(n, p);
            for (std::size_t a = 0; a < c.hom_dim(x, sn.obj[x]); ++a) {
                Vec v = sh.apply(unit_vec(c.hom_dim(x, sn.obj[x]), a));
                for (std::size_t r = 0; r < d; ++r) m(r, sp.off[x] + a) = fsub(m(r, sp.off[x] + a), fmul(sg, v[r], p), p);
            }
            for (std::size_t r = 0; r < d; ++r) m(r, sp.off[sx] + r) = fadd(m(r, sp.off[sx] + r), 1, p);
            add_rows(m);
        }
    if (rows.empty()) return Subspace::full(p, sp.dim);
    return kernel(MatrixFp::from_rows(p, sp.dim, rows));
}

// dim of sum_x C(x, S^n x) modulo U_n + V_n
inline std::size_t direct_ab_dim(const FiniteCategory& c, const CatAutomorphism& s, int n) {
    u32 p = c.p();
    CatAutomorphism sn = sigma_power(s, n);
    DirectSpace sp = direct_space(c, sn);
    std::size_t N = c.num_objects();
    std::vector<Vec> gens;
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y)
            for (std::size_t a = 0; a < c.hom_dim(x, y); ++a)
                for (std::size_t b = 0; b < c.hom_dim(y, sn.obj[x]); ++b) {
                    Vec g = unit_vec(c.hom_dim(x, y), a), f = unit_vec(c.hom_dim(y, sn.obj[x]), b);
                    Vec fg = c.compose(x, y, sn.obj[x], g, f);
                    Vec sgf = c.compose(y, sn.obj[x], sn.obj[y], f, sn.hom[x][y].apply(g));
                    Vec v(sp.dim, 0);
                    for (std::size_t k = 0; k < fg.size(); ++k) v[sp.off[x] + k] = fadd(v[sp.off[x] + k], fg[k], p);
                    for (std::size_t k = 0; k < sgf.size(); ++k) v[sp.off[y] + k] = fsub(v[sp.off[y] + k], sgf[k], p);
                    gens.push_back(v);
                }
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t a = 0; a < c.hom_dim(x, sn.obj[x]); ++a) {
            Vec f = unit_vec(c.hom_dim(x, sn.obj[x]), a);
            Vec sf = s.hom[x][sn.obj[x]].apply(f);
            Vec v(sp.dim, 0);
            v[sp.off[x] + a] = 1;
            std::size_t sx = s.obj[x];
            for (std::size_t k = 0; k < sf.size(); ++k)
                v[sp.off[sx] + k] = fadd(v[sp.off[sx] + k], fmul(sign_pow(n, p), sf[k], p), p);
            gens.push_back(v);
        }
    return sp.dim - Subspace::span(p, sp.dim, gens).dim();
}

}  // namespace oracle
