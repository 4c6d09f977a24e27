#include "kul/hochschild.hpp"

#include <map>

namespace kul {

namespace {

std::size_t ipow(std::size_t b, unsigned e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

// most significant digit first
std::vector<std::size_t> decode(std::size_t t, std::size_t d, unsigned n) {
    std::vector<std::size_t> f(n);
    for (unsigned k = n; k-- > 0;) {
        f[k] = t % d;
        t /= d;
    }
    return f;
}

std::size_t encode(const std::vector<std::size_t>& f, std::size_t d) {
    std::size_t t = 0;
    for (auto x : f) t = t * d + x;
    return t;
}

// tuple with positions i-1,i merged into k
std::vector<std::size_t> merged(const std::vector<std::size_t>& f, std::size_t i, std::size_t k) {
    std::vector<std::size_t> g;
    g.reserve(f.size() - 1);
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (j == i - 1) continue;
        g.push_back(j == i ? k : f[j]);
    }
    return g;
}

MatrixFp linear_combo(const std::vector<MatrixFp>& ms, const Vec& c, u32 p, std::size_t n) {
    MatrixFp r(p, n, n);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!c[k]) continue;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = fadd(r.a[i], fmul(c[k], ms[k].a[i], p), p);
    }
    return r;
}

}  // namespace

Bimodule Bimodule::regular(const Algebra& a) {
    Bimodule m;
    m.dim = a.dim();
    std::vector<Vec> comp;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m.left.push_back(a.left_mult(a.basis(i)));
        m.right.push_back(a.right_mult(a.basis(i)));
        for (std::size_t j = 0; j < a.dim(); ++j) comp.push_back(a.product(i, j));
    }
    m.comp = comp;
    return m;
}

Bimodule Bimodule::twisted(const Algebra& a, const MatrixFp& sigma) {
    if (!is_algebra_automorphism(a, sigma)) throw AlgebraError("twist is not an algebra automorphism");
    Bimodule m;
    m.dim = a.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m.left.push_back(a.left_mult(sigma.col(i)));
        m.right.push_back(a.right_mult(a.basis(i)));
    }
    return m;
}

void Bimodule::validate(const Algebra& a) const {
    const u32 p = a.p();
    const std::size_t d = a.dim();
    if (left.size() != d || right.size() != d) throw AlgebraError("bimodule: one action matrix per basis element");
    auto id = MatrixFp::identity(p, dim);
    if (linear_combo(left, a.unit(), p, dim) != id || linear_combo(right, a.unit(), p, dim) != id)
        throw AlgebraError("bimodule: unit does not act as identity");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Vec& ij = a.product(i, j);
            if (left[i] * left[j] != linear_combo(left, ij, p, dim))
                throw AlgebraError("bimodule: left action not associative");
            if (right[j] * right[i] != linear_combo(right, ij, p, dim))
                throw AlgebraError("bimodule: right action not associative");
            if (left[i] * right[j] != right[j] * left[i]) throw AlgebraError("bimodule: actions do not commute");
        }
}

Vec Bimodule::compose(const Vec& u, const Vec& v) const {
    if (!comp) throw AlgebraError("composition not provided");
    const u32 p = left.empty() ? 2 : left[0].p;
    Vec r(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!u[i]) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (!v[j]) continue;
            r = vadd(r, vscale((*comp)[i * dim + j], fmul(u[i], v[j], p), p), p);
        }
    }
    return r;
}

Hochschild::Hochschild(const Algebra& a, Bimodule m) : a_(a), m_(std::move(m)) { m_.validate(a_); }

std::size_t Hochschild::cochain_dim(unsigned n) const { return m_.dim * ipow(a_.dim(), n); }
std::size_t Hochschild::chain_dim(unsigned n) const { return m_.dim * ipow(a_.dim(), n); }

void Hochschild::guard(std::size_t rows, std::size_t cols) const {
    if (rows * cols > kMatrixBudget)
        throw BudgetExceeded("budget exceeded: " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " matrix is over the " + std::to_string(kMatrixBudget) + "-entry limit");
}

MatrixFp Hochschild::cochain_differential(unsigned n) const {
    const u32 p = a_.p();
    const std::size_t d = a_.dim(), dm = m_.dim;
    guard(cochain_dim(n + 1), cochain_dim(n));
    MatrixFp D(p, cochain_dim(n + 1), cochain_dim(n));
    auto add_block = [&](std::size_t rb, std::size_t cb, const MatrixFp& blk, u32 c) {
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t j = 0; j < dm; ++j)
                if (blk(i, j)) D(rb * dm + i, cb * dm + j) = fadd(D(rb * dm + i, cb * dm + j), fmul(c, blk(i, j), p), p);
    };
    auto add_id = [&](std::size_t rb, std::size_t cb, u32 c) {
        for (std::size_t i = 0; i < dm; ++i) D(rb * dm + i, cb * dm + i) = fadd(D(rb * dm + i, cb * dm + i), c, p);
    };
    const std::size_t nout = ipow(d, n + 1);
    for (std::size_t to = 0; to < nout; ++to) {
        auto f = decode(to, d, n + 1);
        add_block(to, encode({f.begin() + 1, f.end()}, d), m_.left[f[0]], 1);
        for (unsigned i = 1; i <= n; ++i) {
            const Vec& c = a_.product(f[i - 1], f[i]);
            u32 sign = i % 2 ? p - 1 : 1;
            for (std::size_t k = 0; k < d; ++k)
                if (c[k]) add_id(to, encode(merged(f, i, k), d), fmul(sign, c[k], p));
        }
        add_block(to, encode({f.begin(), f.end() - 1}, d), m_.right[f[n]], (n + 1) % 2 ? p - 1 : 1);
    }
    return D;
}

MatrixFp Hochschild::chain_differential(unsigned n) const {
    const u32 p = a_.p();
    const std::size_t d = a_.dim(), dm = m_.dim;
    guard(chain_dim(n), chain_dim(n + 1));
    MatrixFp D(p, chain_dim(n), chain_dim(n + 1));
    const std::size_t nin = ipow(d, n + 1), nout = ipow(d, n);
    for (std::size_t m = 0; m < dm; ++m)
        for (std::size_t ti = 0; ti < nin; ++ti) {
            const std::size_t col = m * nin + ti;
            auto f = decode(ti, d, n + 1);
            auto add_vec = [&](const Vec& u, std::size_t t, u32 c) {
                for (std::size_t mm = 0; mm < dm; ++mm)
                    if (u[mm]) D(mm * nout + t, col) = fadd(D(mm * nout + t, col), fmul(c, u[mm], p), p);
            };
            add_vec(m_.right[f[0]].col(m), encode({f.begin() + 1, f.end()}, d), 1);
            for (unsigned i = 1; i <= n; ++i) {
                const Vec& c = a_.product(f[i - 1], f[i]);
                u32 sign = i % 2 ? p - 1 : 1;
                for (std::size_t k = 0; k < d; ++k)
                    if (c[k]) {
                        std::size_t row = m * nout + encode(merged(f, i, k), d);
                        D(row, col) = fadd(D(row, col), fmul(sign, c[k], p), p);
                    }
            }
            add_vec(m_.left[f[n]].col(m), encode({f.begin(), f.end() - 1}, d), (n + 1) % 2 ? p - 1 : 1);
        }
    return D;
}

std::size_t Hochschild::hh_cohomology_dim(unsigned n) const {
    std::size_t r_out = rank(cochain_differential(n));
    std::size_t r_in = n == 0 ? 0 : rank(cochain_differential(n - 1));
    return cochain_dim(n) - r_out - r_in;
}

Quotient Hochschild::hh_cohomology(unsigned n) const {
    Subspace z = kernel(cochain_differential(n));
    Subspace b = n == 0 ? Subspace::zero(a_.p(), cochain_dim(0)) : image(cochain_differential(n - 1));
    return Quotient(z, b);
}

std::size_t Hochschild::hh_homology_dim(unsigned n) const {
    std::size_t r_out = n == 0 ? 0 : rank(chain_differential(n - 1));
    std::size_t r_in = rank(chain_differential(n));
    return chain_dim(n) - r_out - r_in;
}

Vec Hochschild::cochain_value(unsigned n, const Vec& alpha, const std::vector<std::size_t>& f) const {
    if (alpha.size() != cochain_dim(n) || f.size() != n) throw DimensionError("cochain_value: shape mismatch");
    std::size_t t = encode(f, a_.dim());
    return Vec(alpha.begin() + t * m_.dim, alpha.begin() + (t + 1) * m_.dim);
}

Hochschild::Cochain Hochschild::d_cochain(unsigned n, Cochain alpha) const {
    return [this, n, alpha](const std::vector<std::size_t>& f) {
        const u32 p = a_.p();
        Vec r = m_.left[f[0]].apply(alpha({f.begin() + 1, f.end()}));
        for (unsigned i = 1; i <= n; ++i) {
            const Vec& c = a_.product(f[i - 1], f[i]);
            u32 sign = i % 2 ? p - 1 : 1;
            for (std::size_t k = 0; k < a_.dim(); ++k)
                if (c[k]) r = vadd(r, vscale(alpha(merged(f, i, k)), fmul(sign, c[k], p), p), p);
        }
        Vec last = m_.right[f[n]].apply(alpha({f.begin(), f.end() - 1}));
        return vadd(r, vscale(last, (n + 1) % 2 ? p - 1 : 1, p), p);
    };
}

Hochschild::Sparse Hochschild::d_chain(unsigned n, const Sparse& c) const {
    const u32 p = a_.p();
    const std::size_t d = a_.dim(), dm = m_.dim;
    const std::size_t nin = ipow(d, n + 1), nout = ipow(d, n);
    std::map<std::size_t, u32> acc;
    auto add = [&](std::size_t i, u32 v) {
        if (v) acc[i] = fadd(acc[i], v, p);
    };
    for (auto [idx, coef] : c) {
        std::size_t m = idx / nin;
        auto f = decode(idx % nin, d, n + 1);
        Vec u = m_.right[f[0]].col(m);
        std::size_t t = encode({f.begin() + 1, f.end()}, d);
        for (std::size_t mm = 0; mm < dm; ++mm) add(mm * nout + t, fmul(coef, u[mm], p));
        for (unsigned i = 1; i <= n; ++i) {
            const Vec& pr = a_.product(f[i - 1], f[i]);
            u32 sign = i % 2 ? p - 1 : 1;
            for (std::size_t k = 0; k < d; ++k)
                if (pr[k]) add(m * nout + encode(merged(f, i, k), d), fmul(coef, fmul(sign, pr[k], p), p));
        }
        u = m_.left[f[n]].col(m);
        t = encode({f.begin(), f.end() - 1}, d);
        u32 s = (n + 1) % 2 ? p - 1 : 1;
        for (std::size_t mm = 0; mm < dm; ++mm) add(mm * nout + t, fmul(coef, fmul(s, u[mm], p), p));
    }
    Sparse out;
    for (auto [i, v] : acc)
        if (v) out.push_back({i, v});
    return out;
}

Quotient bimodule_coinvariants(const Algebra& a, const Bimodule& m) {
    std::vector<Vec> gens;
    for (std::size_t f = 0; f < a.dim(); ++f)
        for (std::size_t u = 0; u < m.dim; ++u) gens.push_back(vsub(m.left[f].col(u), m.right[f].col(u), a.p()));
    return Quotient(Subspace::full(a.p(), m.dim), Subspace::span(a.p(), m.dim, gens));
}

Vec contraction(const Hochschild& h, unsigned n, const Vec& alpha, const Vec& gamma, const Quotient& coinv) {
    const Algebra& a = h.algebra();
    const Bimodule& m = h.module();
    if (!m.comp) throw AlgebraError("contraction needs a composition on the coefficients");
    if (alpha.size() != h.cochain_dim(n) || gamma.size() != h.chain_dim(n)) throw DimensionError("contraction: shape");
    const u32 p = a.p();
    const std::size_t nt = ipow(a.dim(), n);
    Vec acc(m.dim, 0);
    for (std::size_t u = 0; u < m.dim; ++u)
        for (std::size_t t = 0; t < nt; ++t) {
            u32 c = gamma[u * nt + t];
            if (!c) continue;
            Vec val(alpha.begin() + t * m.dim, alpha.begin() + (t + 1) * m.dim);
            acc = vadd(acc, vscale(m.compose(unit_vec(m.dim, u), val), c, p), p);
        }
    return coinv.project(acc);
}

bool is_algebra_automorphism(const Algebra& a, const MatrixFp& s) {
    if (s.rows != a.dim() || s.cols != a.dim()) return false;
    if (rank(s) != a.dim()) return false;
    if (s.apply(a.unit()) != a.unit()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (s.apply(a.product(i, j)) != a.mul(s.col(i), s.col(j))) return false;
    return true;
}

MatrixFp sigma_on_cochains(const Hochschild& h, unsigned n, const MatrixFp& sigma, const MatrixFp& sigma_m) {
    MatrixFp x = inverse(sigma).transpose(), r = MatrixFp::identity(sigma.p, 1);
    for (unsigned k = 0; k < n; ++k) r = kron(r, x);
    (void)h;
    return kron(r, sigma_m);
}

MatrixFp sigma_on_chains(const Hochschild& h, unsigned n, const MatrixFp& sigma, const MatrixFp& sigma_m) {
    MatrixFp r = sigma_m;
    for (unsigned k = 0; k < n; ++k) r = kron(r, sigma);
    (void)h;
    return r;
}

MatrixFp theta_matrix(const Hochschild& h, unsigned n, const Vec& trace) {
    const Bimodule& m = h.module();
    const u32 p = h.algebra().p();
    const std::size_t nt = ipow(h.algebra().dim(), n);
    MatrixFp g(p, m.dim, m.dim);  // g(u,v) = tr(u o v)
    for (std::size_t u = 0; u < m.dim; ++u)
        for (std::size_t v = 0; v < m.dim; ++v) {
            Vec c = m.compose(unit_vec(m.dim, u), unit_vec(m.dim, v));
            u64 s = 0;
            for (std::size_t k = 0; k < m.dim; ++k) s = (s + static_cast<u64>(c[k]) * trace[k]) % p;
            g(u, v) = static_cast<u32>(s);
        }
    MatrixFp th(p, h.chain_dim(n), h.cochain_dim(n));
    for (std::size_t u = 0; u < m.dim; ++u)
        for (std::size_t t = 0; t < nt; ++t)
            for (std::size_t v = 0; v < m.dim; ++v) th(u * nt + t, t * m.dim + v) = g(u, v);
    return th;
}

u32 theta_pairing(const Hochschild& h, unsigned n, const Vec& alpha, const Vec& gamma, const Vec& trace) {
    Vec col = theta_matrix(h, n, trace).apply(alpha);
    u64 s = 0;
    for (std::size_t i = 0; i < col.size(); ++i) s = (s + static_cast<u64>(col[i]) * gamma[i]) % h.algebra().p();
    return static_cast<u32>(s);
}

}  // namespace kul
