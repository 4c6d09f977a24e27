#include "kul/exactla.hpp"

#include <sstream>
#include <utility>

namespace kul {

bool is_prime(u32 p) {
    if (p < 2) return false;
    for (u32 d = 2; static_cast<u64>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_prime(u32 p) {
    if (!is_prime(p)) throw std::invalid_argument("p=" + std::to_string(p) + " is not prime");
}

u32 fpow(u32 a, u64 e, u32 p) {
    u32 r = 1 % p;
    while (e) {
        if (e & 1) r = fmul(r, a, p);
        a = fmul(a, a, p);
        e >>= 1;
    }
    return r;
}

u32 finv(u32 a, u32 p) {
    if (a % p == 0) throw std::domain_error("division by zero in GF(p)");
    return fpow(a, p - 2, p);
}

u32 fred(long long v, u32 p) {
    long long r = v % static_cast<long long>(p);
    return static_cast<u32>(r < 0 ? r + p : r);
}

Fp::Fp(u32 p, long long v) : p_(p), v_(0) {
    require_prime(p);
    v_ = fred(v, p);
}
Fp Fp::operator+(Fp o) const { return {p_, fadd(v_, o.v_, p_), true}; }
Fp Fp::operator-(Fp o) const { return {p_, fsub(v_, o.v_, p_), true}; }
Fp Fp::operator*(Fp o) const { return {p_, fmul(v_, o.v_, p_), true}; }
Fp Fp::operator/(Fp o) const { return {p_, fmul(v_, finv(o.v_, p_), p_), true}; }
Fp Fp::operator-() const { return {p_, fneg(v_, p_), true}; }

MatrixFp MatrixFp::identity(u32 p, std::size_t n) {
    MatrixFp m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
    return m;
}

MatrixFp MatrixFp::from_rows(u32 p, std::size_t cols, const std::vector<Vec>& rs) {
    MatrixFp m(p, rs.size(), cols);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i].size() != cols) throw DimensionError("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rs[i][j] % p;
    }
    return m;
}

Vec MatrixFp::row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

Vec MatrixFp::col(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

void MatrixFp::set_col(std::size_t j, const Vec& v) {
    if (v.size() != rows) throw DimensionError("set_col: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

MatrixFp MatrixFp::transpose() const {
    MatrixFp t(p, cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatrixFp MatrixFp::operator*(const MatrixFp& o) const {
    if (cols != o.rows) throw DimensionError("matrix product: inner dimensions differ");
    MatrixFp r(p, rows, o.cols);
    // accumulate in 64 bit, reduce lazily
    std::vector<u64> acc(o.cols);
    const u64 lim = ~u64(0) - u64(p - 1) * (p - 1);
    for (std::size_t i = 0; i < rows; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols; ++k) {
            u32 x = (*this)(i, k);
            if (!x) continue;
            const u32* orow = &o.a[k * o.cols];
            for (std::size_t j = 0; j < o.cols; ++j) {
                acc[j] += static_cast<u64>(x) * orow[j];
                if (acc[j] > lim) acc[j] %= p;
            }
        }
        for (std::size_t j = 0; j < o.cols; ++j) r(i, j) = static_cast<u32>(acc[j] % p);
    }
    return r;
}

MatrixFp MatrixFp::operator+(const MatrixFp& o) const {
    if (rows != o.rows || cols != o.cols) throw DimensionError("matrix sum: shapes differ");
    MatrixFp r = *this;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fadd(a[i], o.a[i], p);
    return r;
}

MatrixFp MatrixFp::operator-(const MatrixFp& o) const {
    if (rows != o.rows || cols != o.cols) throw DimensionError("matrix difference: shapes differ");
    MatrixFp r = *this;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fsub(a[i], o.a[i], p);
    return r;
}

Vec MatrixFp::apply(const Vec& v) const {
    if (v.size() != cols) throw DimensionError("apply: vector length mismatch");
    Vec r(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        u64 s = 0;
        for (std::size_t j = 0; j < cols; ++j) s = (s + static_cast<u64>((*this)(i, j)) * v[j]) % p;
        r[i] = static_cast<u32>(s);
    }
    return r;
}

bool MatrixFp::is_zero() const {
    for (u32 x : a)
        if (x) return false;
    return true;
}

MatrixFp vstack(const MatrixFp& top, const MatrixFp& bottom) {
    if (top.cols != bottom.cols) throw DimensionError("vstack: column counts differ");
    MatrixFp r(top.p, top.rows + bottom.rows, top.cols);
    std::copy(top.a.begin(), top.a.end(), r.a.begin());
    std::copy(bottom.a.begin(), bottom.a.end(), r.a.begin() + top.a.size());
    return r;
}

MatrixFp hstack(const MatrixFp& left, const MatrixFp& right) {
    if (left.rows != right.rows) throw DimensionError("hstack: row counts differ");
    MatrixFp r(left.p, left.rows, left.cols + right.cols);
    for (std::size_t i = 0; i < left.rows; ++i) {
        for (std::size_t j = 0; j < left.cols; ++j) r(i, j) = left(i, j);
        for (std::size_t j = 0; j < right.cols; ++j) r(i, left.cols + j) = right(i, j);
    }
    return r;
}

MatrixFp mat_pow(const MatrixFp& m, unsigned e) {
    if (m.rows != m.cols) throw DimensionError("mat_pow: not square");
    MatrixFp r = MatrixFp::identity(m.p, m.rows), b = m;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

MatrixFp inverse(const MatrixFp& m) {
    if (m.rows != m.cols) throw DimensionError("inverse: not square");
    RrefResult rr = rref(hstack(m, MatrixFp::identity(m.p, m.rows)));
    if (rr.rank < m.rows || (m.rows && rr.pivots[m.rows - 1] >= m.rows)) throw std::domain_error("inverse: singular matrix");
    MatrixFp r(m.p, m.rows, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.rows; ++j) r(i, j) = rr.r(i, m.rows + j);
    return r;
}

MatrixFp kron(const MatrixFp& x, const MatrixFp& y) {
    MatrixFp r(x.p, x.rows * y.rows, x.cols * y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) {
            u32 c = x(i, j);
            if (!c) continue;
            for (std::size_t k = 0; k < y.rows; ++k)
                for (std::size_t l = 0; l < y.cols; ++l) r(i * y.rows + k, j * y.cols + l) = fmul(c, y(k, l), x.p);
        }
    return r;
}

Vec vadd(const Vec& x, const Vec& y, u32 p) {
    if (x.size() != y.size()) throw DimensionError("vadd: length mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = fadd(x[i], y[i], p);
    return r;
}

Vec vsub(const Vec& x, const Vec& y, u32 p) {
    if (x.size() != y.size()) throw DimensionError("vsub: length mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = fsub(x[i], y[i], p);
    return r;
}

Vec vscale(const Vec& x, u32 c, u32 p) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = fmul(x[i], c, p);
    return r;
}

bool vzero(const Vec& x) {
    for (u32 v : x)
        if (v) return false;
    return true;
}

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v.at(i) = 1;
    return v;
}

RrefResult rref(const MatrixFp& m) {
    RrefResult res{m, 0, {}};
    MatrixFp& r = res.r;
    const u32 p = m.p;
    std::size_t row = 0;
    for (std::size_t c = 0; c < r.cols && row < r.rows; ++c) {
        std::size_t piv = row;
        while (piv < r.rows && r(piv, c) == 0) ++piv;
        if (piv == r.rows) continue;
        if (piv != row)
            for (std::size_t j = 0; j < r.cols; ++j) std::swap(r(piv, j), r(row, j));
        u32 inv = finv(r(row, c), p);
        for (std::size_t j = c; j < r.cols; ++j) r(row, j) = fmul(r(row, j), inv, p);
        for (std::size_t i = 0; i < r.rows; ++i) {
            if (i == row || r(i, c) == 0) continue;
            u32 f = r(i, c);
            for (std::size_t j = c; j < r.cols; ++j)
                if (r(row, j)) r(i, j) = fsub(r(i, j), fmul(f, r(row, j), p), p);
        }
        res.pivots.push_back(c);
        ++row;
    }
    res.rank = row;
    return res;
}

std::size_t rank(const MatrixFp& m) { return rref(m).rank; }

Subspace Subspace::zero(u32 p, std::size_t n) {
    Subspace s;
    s.basis_ = MatrixFp(p, 0, n);
    return s;
}

Subspace Subspace::full(u32 p, std::size_t n) {
    Subspace s;
    s.basis_ = MatrixFp::identity(p, n);
    return s;
}

Subspace Subspace::row_space(const MatrixFp& m) {
    RrefResult rr = rref(m);
    Subspace s;
    s.basis_ = MatrixFp(m.p, rr.rank, m.cols);
    std::copy(rr.r.a.begin(), rr.r.a.begin() + rr.rank * m.cols, s.basis_.a.begin());
    return s;
}

Subspace Subspace::span(u32 p, std::size_t n, const std::vector<Vec>& vs) {
    return row_space(MatrixFp::from_rows(p, n, vs));
}

std::vector<Vec> Subspace::vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(vec(i));
    return out;
}

Subspace kernel(const MatrixFp& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : rr.pivots) is_piv[c] = true;
    std::vector<Vec> vs;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        Vec v(m.cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = fneg(rr.r(i, f), m.p);
        vs.push_back(std::move(v));
    }
    return Subspace::span(m.p, m.cols, vs);
}

Subspace image(const MatrixFp& m) { return Subspace::row_space(m.transpose()); }

static void same_ambient(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient() || a.p() != b.p())
        throw DimensionError("ambient dimension mismatch: " + std::to_string(a.ambient()) + " vs " +
                             std::to_string(b.ambient()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
    same_ambient(a, b);
    return Subspace::row_space(vstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    same_ambient(a, b);
    // solve sum x_i a_i = sum y_j b_j, i.e. kernel of [A^T | -B^T]
    const u32 p = a.p();
    MatrixFp bt = b.basis().transpose();
    for (auto& x : bt.a) x = fneg(x, p);
    Subspace k = kernel(hstack(a.basis().transpose(), bt));
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < k.dim(); ++i) {
        Vec sol = k.vec(i);
        Vec v(a.ambient(), 0);
        for (std::size_t r = 0; r < a.dim(); ++r)
            if (sol[r]) v = vadd(v, vscale(a.vec(r), sol[r], p), p);
        vs.push_back(v);
    }
    return Subspace::span(p, a.ambient(), vs);
}

bool contains(const Subspace& a, const Vec& v) {
    if (v.size() != a.ambient()) throw DimensionError("contains: vector length mismatch");
    // reduce v against the rref basis
    Vec w = v;
    const MatrixFp& b = a.basis();
    for (std::size_t i = 0; i < b.rows; ++i) {
        std::size_t c = 0;
        while (b(i, c) == 0) ++c;
        u32 f = w[c];
        if (!f) continue;
        for (std::size_t j = c; j < b.cols; ++j) w[j] = fsub(w[j], fmul(f, b(i, j), a.p()), a.p());
    }
    return vzero(w);
}

bool contains(const Subspace& big, const Subspace& small) {
    same_ambient(big, small);
    for (std::size_t i = 0; i < small.dim(); ++i)
        if (!contains(big, small.vec(i))) return false;
    return true;
}

MatrixFp annihilator(const Subspace& s) {
    Subspace k = kernel(s.basis());
    return k.basis();
}

std::vector<Vec> quotient_basis(const Subspace& big, const Subspace& small) {
    same_ambient(big, small);
    if (!contains(big, small)) throw ContainmentError("quotient_basis: small is not contained in big");
    std::vector<Vec> reps;
    Subspace cur = small;
    for (std::size_t i = 0; i < big.dim(); ++i) {
        Vec v = big.vec(i);
        if (contains(cur, v)) continue;
        reps.push_back(v);
        cur = sum(cur, Subspace::span(big.p(), big.ambient(), {v}));
    }
    return reps;
}

Subspace preimage(const MatrixFp& m, const Subspace& target) {
    if (m.rows != target.ambient()) throw DimensionError("preimage: target ambient mismatch");
    MatrixFp q = annihilator(target);
    if (q.rows == 0) return Subspace::full(m.p, m.cols);
    return kernel(q * m);
}

Subspace map_subspace(const MatrixFp& m, const Subspace& s) {
    if (m.cols != s.ambient()) throw DimensionError("map_subspace: ambient mismatch");
    if (s.dim() == 0) return Subspace::zero(m.p, m.rows);
    return Subspace::row_space((m * s.basis().transpose()).transpose());
}

Quotient::Quotient(const Subspace& big, const Subspace& small)
    : big_(big), small_(small), reps_(quotient_basis(big, small)) {
    const u32 p = big.p();
    const std::size_t n = big.ambient(), k = reps_.size(), s = small.dim();
    // rows of M = [small; reps]; find E with E M^T = [I;0] by reducing [M^T | I]
    std::vector<Vec> rows = small.vectors();
    for (auto& r : reps_) rows.push_back(r);
    MatrixFp mt = MatrixFp::from_rows(p, n, rows).transpose();
    RrefResult rr = rref(hstack(mt, MatrixFp::identity(p, n)));
    proj_ = MatrixFp(p, k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) proj_(i, j) = rr.r(s + i, s + k + j);
}

Vec Quotient::project(const Vec& v) const { return proj_.apply(v); }

Vec Quotient::lift(const Vec& c) const {
    if (c.size() != reps_.size()) throw DimensionError("lift: coordinate length mismatch");
    Vec v(ambient(), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) v = vadd(v, vscale(reps_[i], c[i], big_.p()), big_.p());
    return v;
}

bool solvable(const MatrixFp& m, const Vec& b) {
    MatrixFp bc(m.p, b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) bc(i, 0) = b[i];
    return rank(m) == rank(hstack(m, bc));
}

Vec solve(const MatrixFp& m, const Vec& b) {
    if (b.size() != m.rows) throw DimensionError("solve: rhs length mismatch");
    MatrixFp bc(m.p, b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) bc(i, 0) = b[i];
    RrefResult rr = rref(hstack(m, bc));
    Vec x(m.cols, 0);
    for (std::size_t i = 0; i < rr.rank; ++i) {
        std::size_t c = rr.pivots[i];
        if (c == m.cols) throw std::runtime_error("solve: inconsistent system");
        x[c] = rr.r(i, m.cols);
    }
    return x;
}

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string to_string(const MatrixFp& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows; ++i) os << (i ? "," : "") << to_string(m.row(i));
    os << ']';
    return os.str();
}

}  // namespace kul
