#pragma once
// dense linear algebra over GF(p), p a runtime prime

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kul {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using Vec = std::vector<u32>;

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContainmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime(u32 p);
void require_prime(u32 p);  // throws std::invalid_argument

// small scalar helpers; all arguments assumed reduced mod p
inline u32 fadd(u32 a, u32 b, u32 p) { u32 s = a + b; return s >= p ? s - p : s; }
inline u32 fsub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
inline u32 fmul(u32 a, u32 b, u32 p) { return static_cast<u32>(static_cast<u64>(a) * b % p); }
inline u32 fneg(u32 a, u32 p) { return a == 0 ? 0 : p - a; }
u32 finv(u32 a, u32 p);
u32 fpow(u32 a, u64 e, u32 p);
// reduce a signed integer into [0,p)
u32 fred(long long v, u32 p);

class Fp {
public:
    Fp(u32 p, long long v);
    u32 p() const { return p_; }
    u32 value() const { return v_; }
    Fp operator+(Fp o) const;
    Fp operator-(Fp o) const;
    Fp operator*(Fp o) const;
    Fp operator/(Fp o) const;  // throws on division by zero
    Fp operator-() const;
    bool operator==(const Fp&) const = default;

private:
    Fp(u32 p, u32 v, bool) : p_(p), v_(v) {}
    u32 p_;
    u32 v_;
};

struct MatrixFp {
    u32 p = 2;
    std::size_t rows = 0, cols = 0;
    Vec a;  // row-major

    MatrixFp() = default;
    MatrixFp(u32 p, std::size_t r, std::size_t c) : p(p), rows(r), cols(c), a(r * c, 0) {}
    static MatrixFp identity(u32 p, std::size_t n);
    static MatrixFp from_rows(u32 p, std::size_t cols, const std::vector<Vec>& rs);

    u32& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    u32 operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);

    MatrixFp transpose() const;
    MatrixFp operator*(const MatrixFp& o) const;
    MatrixFp operator+(const MatrixFp& o) const;
    MatrixFp operator-(const MatrixFp& o) const;
    Vec apply(const Vec& v) const;
    bool is_zero() const;
    bool operator==(const MatrixFp&) const = default;
};

MatrixFp vstack(const MatrixFp& top, const MatrixFp& bottom);
MatrixFp hstack(const MatrixFp& left, const MatrixFp& right);
MatrixFp mat_pow(const MatrixFp& m, unsigned e);
MatrixFp inverse(const MatrixFp& m);  // throws if singular
MatrixFp kron(const MatrixFp& x, const MatrixFp& y);

// vector helpers
Vec vadd(const Vec& x, const Vec& y, u32 p);
Vec vsub(const Vec& x, const Vec& y, u32 p);
Vec vscale(const Vec& x, u32 c, u32 p);
bool vzero(const Vec& x);
Vec unit_vec(std::size_t n, std::size_t i);

struct RrefResult {
    MatrixFp r;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};
RrefResult rref(const MatrixFp& m);
std::size_t rank(const MatrixFp& m);

class Subspace {
public:
    Subspace() = default;
    static Subspace zero(u32 p, std::size_t n);
    static Subspace full(u32 p, std::size_t n);
    static Subspace span(u32 p, std::size_t n, const std::vector<Vec>& vs);
    static Subspace row_space(const MatrixFp& m);

    u32 p() const { return basis_.p; }
    std::size_t ambient() const { return basis_.cols; }
    std::size_t dim() const { return basis_.rows; }
    const MatrixFp& basis() const { return basis_; }
    Vec vec(std::size_t i) const { return basis_.row(i); }
    std::vector<Vec> vectors() const;
    bool operator==(const Subspace&) const = default;

private:
    MatrixFp basis_;
};

Subspace kernel(const MatrixFp& m);
Subspace image(const MatrixFp& m);  // column space
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& a, const Vec& v);
bool contains(const Subspace& big, const Subspace& small);
// rows spanning the functionals vanishing on s
MatrixFp annihilator(const Subspace& s);
std::vector<Vec> quotient_basis(const Subspace& big, const Subspace& small);
Subspace preimage(const MatrixFp& m, const Subspace& target);
// apply a linear map to a subspace
Subspace map_subspace(const MatrixFp& m, const Subspace& s);

// coordinates of big/small w.r.t. fixed representatives
class Quotient {
public:
    Quotient() = default;
    Quotient(const Subspace& big, const Subspace& small);
    std::size_t dim() const { return reps_.size(); }
    std::size_t ambient() const { return big_.ambient(); }
    const std::vector<Vec>& reps() const { return reps_; }
    const Subspace& big() const { return big_; }
    const Subspace& small() const { return small_; }
    Vec project(const Vec& v) const;  // v assumed in big
    Vec lift(const Vec& c) const;
    // matrix (dim x ambient) of project
    const MatrixFp& projection() const { return proj_; }

private:
    Subspace big_, small_;
    std::vector<Vec> reps_;
    MatrixFp proj_;
};

// solve m x = b, throws if inconsistent
Vec solve(const MatrixFp& m, const Vec& b);
bool solvable(const MatrixFp& m, const Vec& b);

std::string to_string(const MatrixFp& m);
std::string to_string(const Vec& v);

}  // namespace kul
