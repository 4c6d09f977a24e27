#pragma once
// the homotopy category of perfect complexes over k[x]/x^2: indecomposables Lambda^[m,n],
// normal-form morphisms, a chain-level oracle, the orbit category modulo [1], the
// characteristic map from HH^* and the ideal tables

#include <array>
#include <map>
#include <string>

#include "kul/graded_category.hpp"

namespace kul::dual {

// c0 + c1 x
using Lam = std::array<u32, 2>;
Lam lmul(const Lam& a, const Lam& b, u32 p);
Lam ladd(const Lam& a, const Lam& b, u32 p);
Lam lscale(const Lam& a, u32 c, u32 p);

// Lambda^[m,n], differential x
struct Interval {
    int m = 0, n = 0;
    int length() const { return n - m; }
    bool operator==(const Interval&) const = default;
};
std::string to_string(const Interval& a);

// complex with Lambda in degrees [m,n] and differential s*x, s = +-1
struct Cx {
    int m = 0, n = 0, s = 1;
    bool has(int i) const { return i >= m && i <= n; }
};
// Sigma^t of Lambda^[m,n]: degrees [m-t, n-t], differential (-1)^t x
Cx shifted(const Interval& b, int t);

// chain map X -> Y; comp[i] is the component at source degree i
struct ChainMap {
    Cx src, tgt;
    std::map<int, Lam> comp;
    Lam at(int i) const;
};
bool is_chain_map(const ChainMap& f, u32 p);

// basis of Hom(a, Sigma^t b) from the classification: Id-type generator on [id_lo, id_hi]
// and/or multiplication by x in source degree x_deg
struct HomBasis {
    bool has_id = false, has_x = false;
    int id_lo = 0, id_hi = 0, x_deg = 0;
    std::size_t dim() const { return (has_id ? 1 : 0) + (has_x ? 1 : 0); }
};
HomBasis hom_basis(const Interval& a, const Interval& b, int t);

struct Morphism {
    Interval src, tgt;
    int t = 0;
    u32 c_id = 0, c_x = 0;
    bool operator==(const Morphism&) const = default;
};
std::string to_string(const Morphism& f);
// generator chain maps; Id-type has components (-1)^{t(i-lo)} so that it commutes with the shifted differential
ChainMap generator_chain(const Interval& a, const Interval& b, int t, bool id_type, u32 p);
ChainMap to_chain(const Morphism& f, u32 p);
// g o f = Sigma^{t_f}(g) f, from the normal-form rules
Morphism compose(const Morphism& f, const Morphism& g, u32 p);
// chain-level composite Sigma^{t}(g) f where f lands in Sigma^t of g's source
ChainMap chain_compose(const ChainMap& f, const ChainMap& g, int t, u32 p);

// brute force: chain maps modulo homotopy as linear algebra over k
struct OracleHom {
    Cx src, tgt;
    int lo = 0, hi = -1;  // common support; coordinates 2*(i-lo) + {0,1}
    Subspace cycles, bounds;
    Quotient q;
    std::size_t dim() const { return q.dim(); }
    Vec coords(const ChainMap& f) const;
    ChainMap chain(const Vec& v) const;
};
OracleHom oracle_hom(const Cx& src, const Cx& tgt, u32 p);
OracleHom oracle_hom(const Interval& a, const Interval& b, int t, u32 p);
// normal form of the homotopy class of a chain map a -> Sigma^t b; throws CategoryError if f is not a chain map
Morphism reduce(const ChainMap& f, const Interval& a, const Interval& b, int t, u32 p);

// skeleton Lambda^[-l,0], l = 0..W, of the orbit category modulo [1], degree window D
Interval skeleton_object(int l);
GradedCategory skeleton(u32 p, int W, int D);
// coordinates of a morphism inside the skeleton hom space
Vec skeleton_coords(const Morphism& f);

// closed-form dimensions of the windowed centre and abelianization
std::size_t center_model_dim(int t, int W, u32 p);
std::size_t ab_model_dim(int t, int W, u32 p);

// Hattori-Stallings trace of a degree-0 endomorphism, valued in Lambda/[Lambda,Lambda] = Lambda
Lam hattori_stallings(const ChainMap& f, u32 p);
// trace functional (coefficient of x) on the skeleton, d = 0
TraceData skeleton_trace(const GradedCategory& sk);
// phi(a): a on the stalk complex Lambda, as an element of E_0 of the skeleton
Vec phi(const GradedCategory& sk, const Lam& a);

struct Ab0Report {
    std::size_t ab0 = 0, im_phi = 0, c_objects = 0, sum = 0, intersection = 0;
    bool tr_phi_identity = false;
};
Ab0Report ab0_decomposition(u32 p, int W);

// ---- the bicomplex and the characteristic map ----

// matrices over Lambda, acting on columns
struct LMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Lam> a;
    LMat() = default;
    LMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Lam{0, 0}) {}
    Lam& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Lam& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool is_zero() const;
};
LMat lmat_mul(const LMat& x, const LMat& y, u32 p);
LMat lmat_sub(const LMat& x, const LMat& y, u32 p);
LMat lmat_scale(const LMat& x, u32 c, u32 p);

// elements of Lambda^op (x) Lambda as 2x2 blocks on the right-module basis 1(x)1, x(x)1
enum class Tensor { one, x_left, x_right };  // 1(x)1, x(x)1, 1(x)x
LMat tensor_block(Tensor t, u32 p);

// C = Lambda^[-n,0] (x)^L Lambda, truncated to degrees -i_max..0
struct Bicomplex {
    int n = 0, i_max = 0;
    std::vector<LMat> d;  // d[i]: C^{-i} -> C^{-i+1}, i = 1..i_max (d[0] unused)
    std::size_t summands(int i) const { return static_cast<std::size_t>(std::min(i, n) + 1); }
};
Bicomplex build_bicomplex(int n, int i_max, u32 p);

struct IotaPi {
    int n = 0;
    std::vector<LMat> iota, pi;  // iota[i]: Lambda -> C^{-i}, pi[i]: C^{-i} -> Lambda, i = 0..n
    std::vector<int> x2_signs;   // solved signs in front of x_2 in pi_{-n}
    bool iota_chain = false, pi_chain = false, pi_iota_identity = false, iota_pi_homotopic = false;
};
IotaPi iota_pi(int n, u32 p);

enum class HHGen { one, x };
// chi(g)_X for X = target, as a normal form in Hom(X, Sigma^l X); x is represented by x(x)1 unless right_x
Morphism chi(int l, HHGen g, const Interval& target, u32 p, bool right_x = false);
// the composite before reduction
ChainMap chi_chain(int l, HHGen g, int n, u32 p, bool right_x = false);

// HH^l(k[x]/x^2): description and dimension
struct HHForm {
    std::string description;
    std::size_t dim;
    std::vector<HHGen> basis;
};
HHForm hh_closed_form(int l, u32 p);

// ---- ideal tables ----
enum class Kind { zero, full, tilde_z0, span };
std::string to_string(Kind k);

struct TableCell {
    u32 p;
    unsigned r;
    int s, t;
    Kind kind;
    std::size_t dim;
    bool certified;
};
class Tables {
public:
    Tables(u32 p, int W);
    const GradedCategory& category() const { return inv_.category(); }
    GradedInvariants& invariants() { return inv_; }
    int window() const { return W_; }
    // a cell is certified when every object needed to see it has length below W
    bool certified(int s, int t) const;
    Subspace tilde_z0();
    Kind classify(const Subspace& k, int t);
    // the subspace a table label names in degree t (span has no fixed meaning and throws)
    Subspace space_of(Kind k, int t);
    TableCell k_rs(unsigned r, int s, int t);
    // subspace of HH^l (coordinates in hh_closed_form(l).basis) mapping into (K_{r,s})_l
    Subspace hk(unsigned r, int s, int l);
    // chi of an HH^l basis element as an element of E_l of the skeleton
    Vec chi_family(int l, HHGen g);
    // dims of T_r per degree for the report
    std::size_t t_r_dim(unsigned r, int n) { return inv_.t_r(r, n).dim(); }

private:
    u32 p_;
    int W_;
    GradedInvariants inv_;
};

// the displayed case tables, transcribed
Kind expected_k_rs(u32 p, int s, int t);
// expected HK_{r,s} in degree l, as a subspace of HH^l in hh_closed_form coordinates
Subspace expected_hk(u32 p, int s, int l);

}  // namespace kul::dual
