#pragma once
// graded k-linear categories truncated to a degree window, orbit categories A/Sigma,
// graded centers, abelianizations, xi_p and the K_{r,s} ideals

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "kul/algebra.hpp"

namespace kul {

// a required composition lands outside the degree window
struct WindowTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CategoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (-1)^(i*j) as an element of GF(p)
inline u32 koszul(long long i, long long j, u32 p) { return ((i * j) % 2 == 0) ? 1 : p - 1; }
inline u32 sign_pow(long long e, u32 p) { return (e % 2 == 0) ? 1 : p - 1; }

// finite nongraded category given by an algebra with a complete set of orthogonal idempotents:
// C(x,y) = e_y A e_x, composition is the product
class FiniteCategory {
public:
    FiniteCategory(Algebra a, std::vector<Vec> idempotents, std::vector<std::string> names = {});
    static FiniteCategory one_object(Algebra a);

    u32 p() const { return a_.p(); }
    const Algebra& algebra() const { return a_; }
    std::size_t num_objects() const { return e_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t hom_dim(std::size_t x, std::size_t y) const { return hom_[x][y].dim(); }
    const Subspace& hom(std::size_t x, std::size_t y) const { return hom_[x][y]; }
    // coordinates <-> algebra elements
    Vec embed(std::size_t x, std::size_t y, const Vec& c) const;
    Vec coords(std::size_t x, std::size_t y, const Vec& elem) const;
    // g o f for f: x -> y, g: y -> z
    Vec compose(std::size_t x, std::size_t y, std::size_t z, const Vec& f, const Vec& g) const;
    Vec identity(std::size_t x) const;

private:
    Algebra a_;
    std::vector<Vec> e_;
    std::vector<std::string> names_;
    std::vector<std::vector<Subspace>> hom_;
};

struct CatAutomorphism {
    std::vector<std::size_t> obj;               // x -> sigma(x)
    std::vector<std::vector<MatrixFp>> hom;     // [x][y]: C(x,y) -> C(sx,sy)

    static CatAutomorphism identity(const FiniteCategory& c);
    // from an algebra automorphism permuting the idempotents
    static CatAutomorphism from_algebra(const FiniteCategory& c, const MatrixFp& sigma);
    CatAutomorphism inverse() const;
    CatAutomorphism then(const CatAutomorphism& next) const;  // next o this
    // nullopt when functorial and invertible
    std::optional<std::string> check(const FiniteCategory& c) const;
};

class GradedCategory {
public:
    using HomDim = std::function<std::size_t(std::size_t x, std::size_t y, int n)>;
    // g o f for f in (A_x^y)_i and g in (A_y^z)_j
    using Compose = std::function<Vec(std::size_t x, std::size_t y, std::size_t z, int i, int j, const Vec& f,
                                      const Vec& g)>;
    using SigmaHom = std::function<MatrixFp(std::size_t x, std::size_t y, int n)>;

    GradedCategory(u32 p, std::vector<std::string> objects, int window, int generator_bound, HomDim dims,
                   Compose comp, std::vector<Vec> identities);

    u32 p() const { return p_; }
    std::size_t num_objects() const { return objects_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    int window() const { return window_; }
    // morphisms of degrees |j| <= generator_bound generate everything
    int generator_bound() const { return gen_; }

    bool in_window(long long n) const { return n >= -window_ && n <= window_; }
    std::size_t hom_dim(std::size_t x, std::size_t y, int n) const;  // throws WindowTooSmall outside
    Vec compose(std::size_t x, std::size_t y, std::size_t z, int i, int j, const Vec& f, const Vec& g) const;
    const Vec& identity(std::size_t x) const { return ids_[x]; }

    // the Sigma action on an orbit category
    bool has_sigma() const { return static_cast<bool>(sigma_hom_); }
    std::size_t sigma_object(std::size_t x) const { return sigma_obj_[x]; }
    MatrixFp sigma_hom(std::size_t x, std::size_t y, int n) const { return sigma_hom_(x, y, n); }
    void set_sigma(std::vector<std::size_t> obj, SigmaHom h);

    // E_n = sum over x of (A_x^x)_n
    std::size_t endo_dim(int n) const;
    std::size_t endo_offset(std::size_t x, int n) const;
    Vec endo_part(const Vec& e, std::size_t x, int n) const;
    // a o u componentwise, u in E_k first, then a in E_n
    Vec endo_compose(int n, const Vec& a, int k, const Vec& u) const;
    Vec endo_power(int n, const Vec& a, unsigned e) const;

    // associativity and identity laws for degrees in [-bound, bound]; nullopt when ok
    std::optional<std::string> check(int bound) const;

private:
    u32 p_;
    std::vector<std::string> objects_;
    int window_, gen_;
    HomDim dims_;
    Compose comp_;
    std::vector<Vec> ids_;
    std::vector<std::size_t> sigma_obj_;
    SigmaHom sigma_hom_;
};

// ((A/Sigma)_x^y)_n = C(x, Sigma^n y), g o f = Sigma^n(g) f; morphisms of degree -1, 0, 1 generate
GradedCategory orbit_category(const FiniteCategory& c, const CatAutomorphism& sigma, int window);

// category json: {"algebra": <algebra json>, "idempotents"?: [...], "names"?: [...], "sigma"?: rows}
struct CategoryInput {
    FiniteCategory cat;
    CatAutomorphism sigma;
};
CategoryInput category_from_json(const nlohmann::json& j);

struct CenterComponent {
    int degree;
    Subspace space;  // in E_n coordinates
};
struct AbComponent {
    int degree;
    Quotient q;  // E_n / [A,A]_n
};

// fixed space of action, and V / (id - a*action)V
Subspace sigma_invariants(const MatrixFp& action);
Quotient sigma_coinvariants(const MatrixFp& action, u32 a);

// a graded subspace family with the degrees where it is certified
struct GradedIdeal {
    std::map<int, Subspace> degrees;
    std::vector<int> indeterminate;
    std::map<int, std::vector<int>> used;  // degree -> s (or r) values intersected over
    bool certified(int n) const { return degrees.count(n) > 0; }
};

struct TraceData {
    int d = 0;
    std::vector<Vec> tr;  // per object, a functional on (A_x^x)_d
};

// all per-degree invariants of one category, memoized
class GradedInvariants {
public:
    explicit GradedInvariants(GradedCategory a) : a_(std::move(a)) {}
    const GradedCategory& category() const { return a_; }

    const CenterComponent& center(int n);
    // centralizer of the morphisms with degrees in the given set (e.g. {0} gives the A-center)
    CenterComponent center_for(int n, const std::vector<int>& degrees) const;
    const Subspace& commutators(int n);
    const AbComponent& ab(int n);
    const MatrixFp& xi(int n);              // Ab_n -> Ab_{np}
    MatrixFp xi_power(int n, unsigned r);   // Ab_n -> Ab_{n p^r}
    Subspace t_r(unsigned r, int n);        // in Ab_n coordinates
    // lifts of a T_r basis into E_n
    std::vector<Vec> t_r_lifts(unsigned r, int n);

    enum class Side { left, right, both };
    // (K_{r,s})_n, throws WindowTooSmall when not certified
    Subspace k_rs_degree(unsigned r, int s, int n, Side side = Side::both);
    GradedIdeal k_rs(unsigned r, int s, int lo, int hi);
    // intersection over every certified s (K_r) or over r = 0..r_max (R_s)
    GradedIdeal k_r(unsigned r, int lo, int hi);
    GradedIdeal r_s(int s, unsigned r_max, int lo, int hi);
    GradedIdeal reynolds(unsigned r_max, int lo, int hi);

    // (f, g) = sum_x tr_x(f_x o g_x) for f in E_n, g in E_{d-n}
    u32 pair(const TraceData& t, int n, const Vec& f, const Vec& g) const;
    GradedIdeal k_r_via_perp(const TraceData& t, unsigned r, int lo, int hi);
    // zeta_r on Z^m, landing in Z^{d - (d-m)/p^r}; zero matrix when p^r does not divide d-m
    struct ZetaMap {
        int from, to;
        MatrixFp m;  // E_to <- center basis coordinates of Z^from
    };
    ZetaMap zeta_r(const TraceData& t, unsigned r, int m);
    GradedIdeal zeta_image(const TraceData& t, unsigned r, int lo, int hi);

private:
    void need(long long n, const char* what) const;
    GradedCategory a_;
    std::map<int, CenterComponent> center_;
    std::map<int, Subspace> comm_;
    std::map<int, AbComponent> ab_;
    std::map<int, MatrixFp> xi_;
};

// trace functional a -> form(1, a) restricted to each C(x,x), for the orbit category in degree 0;
// throws CategoryError when the algebra carries no symmetrizing form
TraceData trace_from_form(const FiniteCategory& c);

// nullopt when (weakly) d-Calabi-Yau on the window, otherwise the first violation
std::optional<std::string> cy_check(const GradedCategory& a, const TraceData& t, bool weak);

}  // namespace kul
