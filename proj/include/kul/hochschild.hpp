#pragma once
// bar-complex Hochschild (co)homology of a one-object algebra with bimodule coefficients

#include <functional>
#include <optional>

#include "kul/algebra.hpp"

namespace kul {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kMatrixBudget = 2'000'000;

// M with left/right actions of the algebra basis; optional composition making it a linear category
struct Bimodule {
    std::size_t dim = 0;
    std::vector<MatrixFp> left;   // left[a]: u -> e_a u
    std::vector<MatrixFp> right;  // right[a]: u -> u e_a
    std::optional<std::vector<Vec>> comp;  // comp[i*dim+j] = u_i o u_j

    static Bimodule regular(const Algebra& a);
    // ^sigma Lambda: left action through sigma, f.u = sigma(f) u
    static Bimodule twisted(const Algebra& a, const MatrixFp& sigma);
    void validate(const Algebra& a) const;  // action compatibility, throws AlgebraError
    Vec compose(const Vec& u, const Vec& v) const;
};

class Hochschild {
public:
    Hochschild(const Algebra& a, Bimodule m);
    const Algebra& algebra() const { return a_; }
    const Bimodule& module() const { return m_; }

    std::size_t cochain_dim(unsigned n) const;  // dim M * d^n
    std::size_t chain_dim(unsigned n) const;    // dim M * d^n

    // C^n -> C^{n+1}; index of (f_1..f_n ; m) is t*dimM + m with f_1 most significant in t
    MatrixFp cochain_differential(unsigned n) const;
    // C_{n+1} -> C_n; index of (m ; f_0..f_n) is m*d^(n+1) + t
    MatrixFp chain_differential(unsigned n) const;

    std::size_t hh_cohomology_dim(unsigned n) const;
    Quotient hh_cohomology(unsigned n) const;  // cocycles mod coboundaries
    std::size_t hh_homology_dim(unsigned n) const;

    // matrix-free versions, for degrees beyond the dense budget
    using Cochain = std::function<Vec(const std::vector<std::size_t>&)>;
    Cochain d_cochain(unsigned n, Cochain alpha) const;
    // sparse chain: (index, coefficient) pairs
    using Sparse = std::vector<std::pair<std::size_t, u32>>;
    Sparse d_chain(unsigned n, const Sparse& c) const;

    Vec cochain_value(unsigned n, const Vec& alpha, const std::vector<std::size_t>& tuple) const;

private:
    void guard(std::size_t rows, std::size_t cols) const;
    Algebra a_;
    Bimodule m_;
};

// class in M/[A,M] of u o alpha(f_1..f_n), summed over the chain; M must carry a composition
Vec contraction(const Hochschild& h, unsigned n, const Vec& alpha, const Vec& gamma, const Quotient& coinv);
// coinvariants M/[A,M]
Quotient bimodule_coinvariants(const Algebra& a, const Bimodule& m);

// chain-level automorphism actions; sigma is an algebra automorphism, sigma_m its action on M
MatrixFp sigma_on_cochains(const Hochschild& h, unsigned n, const MatrixFp& sigma, const MatrixFp& sigma_m);
MatrixFp sigma_on_chains(const Hochschild& h, unsigned n, const MatrixFp& sigma, const MatrixFp& sigma_m);

// Theta_n(alpha)(u x f_1..f_n) = tr(u o alpha(f_1..f_n)); rows: C_n basis, cols: C^n basis
MatrixFp theta_matrix(const Hochschild& h, unsigned n, const Vec& trace);
u32 theta_pairing(const Hochschild& h, unsigned n, const Vec& alpha, const Vec& gamma, const Vec& trace);

bool is_algebra_automorphism(const Algebra& a, const MatrixFp& sigma);

}  // namespace kul
