#pragma once
// finite-dimensional unital associative algebras over GF(p), by structure constants

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kul/exactla.hpp"

namespace kul {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// thrown when the trace-form radical candidate cannot be certified
struct RadicalUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Algebra {
public:
    Algebra() = default;
    // validates associativity and the unit; throws AlgebraError naming the first bad triple
    Algebra(u32 p, std::vector<std::string> labels, std::vector<Vec> table, Vec unit);

    u32 p() const { return p_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Vec& unit() const { return unit_; }
    const Vec& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Vec mul(const Vec& a, const Vec& b) const;
    Vec power(const Vec& a, unsigned long long e) const;
    Vec basis(std::size_t i) const { return unit_vec(dim_, i); }
    MatrixFp left_mult(const Vec& a) const;   // b -> a b
    MatrixFp right_mult(const Vec& a) const;  // b -> b a

    const std::optional<MatrixFp>& form() const { return form_; }
    const std::optional<Subspace>& recorded_radical() const { return radical_; }
    void set_form(const MatrixFp& gram);
    void set_radical(const Subspace& j);

    nlohmann::json to_json() const;
    std::string format(const Vec& a) const;  // "x + 2*y"

private:
    u32 p_ = 2;
    std::size_t dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<Vec> table_;
    Vec unit_;
    std::optional<MatrixFp> form_;
    std::optional<Subspace> radical_;
};

// the json schema: {"p","dim","labels","unit","table","form"?,"radical"?}
// plus constructor sugar {"construct":"quiver"|"group"|"matrix", ...}
Algebra from_structure_constants(const nlohmann::json& spec);
Algebra load_algebra(const std::string& path);

struct QuiverArrow {
    std::size_t src, tgt;
    std::string label;
};
// paths are lists of arrow indices, read left to right; p*q = "p then q"
Algebra monomial_quiver_algebra(u32 p, std::size_t vertices, const std::vector<QuiverArrow>& arrows,
                                const std::vector<std::vector<std::size_t>>& zero_relations);
Algebra group_algebra(const std::vector<std::vector<std::size_t>>& cayley, u32 p);
Algebra matrix_algebra(const Algebra& base, std::size_t n);

Subspace center(const Algebra& a);
Subspace commutator_subspace(const Algebra& a);
Subspace radical(const Algebra& a);
// nilpotent two-sided ideal check; returns nilpotency index or 0 if not
std::size_t nilpotency_index(const Algebra& a, const Subspace& ideal);
bool is_ideal(const Algebra& a, const Subspace& s);
Subspace product_space(const Algebra& a, const Subspace& x, const Subspace& y);

// Lambda/[Lambda,Lambda]
struct HH0 {
    Quotient q;
    std::size_t dim() const { return q.dim(); }
    Vec project(const Vec& a) const { return q.project(a); }
    Vec lift(const Vec& c) const { return q.lift(c); }
};
HH0 hh0(const Algebra& a);
MatrixFp xi_p_on_hh0(const Algebra& a, const HH0& h);
MatrixFp xi_p_on_hh0(const Algebra& a);

// nullopt when ok, otherwise a description of the violation
std::optional<std::string> validate_symmetrizing_form(const Algebra& a, const MatrixFp& gram);
u32 form_value(const MatrixFp& gram, const Vec& x, const Vec& y);

}  // namespace kul
