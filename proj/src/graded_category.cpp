#include "kul/graded_category.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <sstream>

#include "kul/hochschild.hpp"

namespace kul {

namespace {

std::vector<std::size_t> pivots_of(const Subspace& s) {
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t j = 0;
        while (s.basis()(i, j) == 0) ++j;
        piv.push_back(j);
    }
    return piv;
}

std::string deg_msg(const char* what, long long n, int d) {
    std::ostringstream o;
    o << what << ": degree " << n << " needs a window larger than " << d;
    return o.str();
}

}  // namespace

// ---------- finite categories ----------

FiniteCategory::FiniteCategory(Algebra a, std::vector<Vec> idempotents, std::vector<std::string> names)
    : a_(std::move(a)), e_(std::move(idempotents)), names_(std::move(names)) {
    u32 p = a_.p();
    if (e_.empty()) throw CategoryError("no objects");
    Vec total(a_.dim(), 0);
    for (std::size_t x = 0; x < e_.size(); ++x) {
        if (e_[x].size() != a_.dim()) throw CategoryError("idempotent has the wrong length");
        for (std::size_t y = 0; y < e_.size(); ++y) {
            Vec prod = a_.mul(e_[x], e_[y]);
            if (x == y ? prod != e_[x] : !vzero(prod))
                throw CategoryError("idempotents " + std::to_string(x) + "," + std::to_string(y) +
                                    " are not orthogonal idempotents");
        }
        total = vadd(total, e_[x], p);
    }
    if (total != a_.unit()) throw CategoryError("idempotents do not sum to the unit");
    if (names_.empty())
        for (std::size_t x = 0; x < e_.size(); ++x) names_.push_back(e_.size() == 1 ? "*" : "o" + std::to_string(x));
    if (names_.size() != e_.size()) throw CategoryError("one name per object required");
    hom_.assign(e_.size(), std::vector<Subspace>(e_.size()));
    for (std::size_t x = 0; x < e_.size(); ++x)
        for (std::size_t y = 0; y < e_.size(); ++y) {
            std::vector<Vec> gens;
            for (std::size_t b = 0; b < a_.dim(); ++b) gens.push_back(a_.mul(a_.mul(e_[y], a_.basis(b)), e_[x]));
            hom_[x][y] = Subspace::span(p, a_.dim(), gens);
        }
}

FiniteCategory FiniteCategory::one_object(Algebra a) {
    Vec u = a.unit();
    return FiniteCategory(std::move(a), {u});
}

Vec FiniteCategory::embed(std::size_t x, std::size_t y, const Vec& c) const {
    const Subspace& h = hom_[x][y];
    Vec v(a_.dim(), 0);
    for (std::size_t i = 0; i < h.dim(); ++i)
        if (c[i]) v = vadd(v, vscale(h.vec(i), c[i], a_.p()), a_.p());
    return v;
}

Vec FiniteCategory::coords(std::size_t x, std::size_t y, const Vec& elem) const {
    const Subspace& h = hom_[x][y];
    auto piv = pivots_of(h);
    Vec c(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) c[i] = elem[piv[i]];
    if (embed(x, y, c) != elem) throw CategoryError("element is not a morphism " + names_[x] + " -> " + names_[y]);
    return c;
}

Vec FiniteCategory::compose(std::size_t x, std::size_t y, std::size_t z, const Vec& f, const Vec& g) const {
    return coords(x, z, a_.mul(embed(y, z, g), embed(x, y, f)));
}

Vec FiniteCategory::identity(std::size_t x) const { return coords(x, x, e_[x]); }

CatAutomorphism CatAutomorphism::identity(const FiniteCategory& c) {
    CatAutomorphism s;
    std::size_t n = c.num_objects();
    for (std::size_t x = 0; x < n; ++x) s.obj.push_back(x);
    s.hom.assign(n, std::vector<MatrixFp>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) s.hom[x][y] = MatrixFp::identity(c.p(), c.hom_dim(x, y));
    return s;
}

CatAutomorphism CatAutomorphism::from_algebra(const FiniteCategory& c, const MatrixFp& sigma) {
    const Algebra& a = c.algebra();
    if (sigma.rows != a.dim() || sigma.cols != a.dim() || !is_algebra_automorphism(a, sigma))
        throw CategoryError("sigma is not an algebra automorphism");
    std::size_t n = c.num_objects();
    CatAutomorphism s;
    for (std::size_t x = 0; x < n; ++x) {
        Vec img = c.embed(x, x, c.identity(x));
        img = sigma.apply(img);
        std::size_t found = n;
        for (std::size_t y = 0; y < n; ++y)
            if (c.embed(y, y, c.identity(y)) == img) found = y;
        if (found == n) throw CategoryError("sigma does not permute the idempotents");
        s.obj.push_back(found);
    }
    s.hom.assign(n, std::vector<MatrixFp>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t sx = s.obj[x], sy = s.obj[y];
            MatrixFp m(c.p(), c.hom_dim(sx, sy), c.hom_dim(x, y));
            for (std::size_t k = 0; k < c.hom_dim(x, y); ++k)
                m.set_col(k, c.coords(sx, sy, sigma.apply(c.embed(x, y, unit_vec(c.hom_dim(x, y), k)))));
            s.hom[x][y] = m;
        }
    return s;
}

CatAutomorphism CatAutomorphism::inverse() const {
    std::size_t n = obj.size();
    CatAutomorphism s;
    s.obj.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x) s.obj[obj[x]] = x;
    s.hom.assign(n, std::vector<MatrixFp>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) s.hom[obj[x]][obj[y]] = kul::inverse(hom[x][y]);
    return s;
}

CatAutomorphism CatAutomorphism::then(const CatAutomorphism& next) const {
    std::size_t n = obj.size();
    CatAutomorphism s;
    for (std::size_t x = 0; x < n; ++x) s.obj.push_back(next.obj[obj[x]]);
    s.hom.assign(n, std::vector<MatrixFp>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) s.hom[x][y] = next.hom[obj[x]][obj[y]] * hom[x][y];
    return s;
}

std::optional<std::string> CatAutomorphism::check(const FiniteCategory& c) const {
    std::size_t n = c.num_objects();
    if (obj.size() != n) return "object map has the wrong size";
    std::vector<bool> hit(n, false);
    for (auto y : obj) {
        if (y >= n || hit[y]) return "object map is not a permutation";
        hit[y] = true;
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const MatrixFp& m = hom[x][y];
            if (m.rows != c.hom_dim(obj[x], obj[y]) || m.cols != c.hom_dim(x, y) || m.rows != m.cols ||
                rank(m) != m.rows)
                return "hom matrix " + std::to_string(x) + "->" + std::to_string(y) + " is not invertible";
        }
    for (std::size_t x = 0; x < n; ++x)
        if (hom[x][x].apply(c.identity(x)) != c.identity(obj[x])) return "identity of object " + std::to_string(x) + " not preserved";
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t i = 0; i < c.hom_dim(x, y); ++i)
                    for (std::size_t j = 0; j < c.hom_dim(y, z); ++j) {
                        Vec f = unit_vec(c.hom_dim(x, y), i), g = unit_vec(c.hom_dim(y, z), j);
                        Vec lhs = hom[x][z].apply(c.compose(x, y, z, f, g));
                        Vec rhs = c.compose(obj[x], obj[y], obj[z], hom[x][y].apply(f), hom[y][z].apply(g));
                        if (lhs != rhs) return "not functorial on objects " + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z);
                    }
    return std::nullopt;
}

// ---------- graded categories ----------

GradedCategory::GradedCategory(u32 p, std::vector<std::string> objects, int window, int generator_bound, HomDim dims,
                               Compose comp, std::vector<Vec> identities)
    : p_(p), objects_(std::move(objects)), window_(window), gen_(generator_bound), dims_(std::move(dims)),
      comp_(std::move(comp)), ids_(std::move(identities)) {
    require_prime(p);
    if (window < 0) throw CategoryError("negative window");
    if (ids_.size() != objects_.size()) throw CategoryError("one identity per object required");
    for (std::size_t x = 0; x < objects_.size(); ++x)
        if (ids_[x].size() != dims_(x, x, 0)) throw CategoryError("identity has the wrong length");
}

std::size_t GradedCategory::hom_dim(std::size_t x, std::size_t y, int n) const {
    if (!in_window(n)) throw WindowTooSmall(deg_msg("hom", n, window_));
    return dims_(x, y, n);
}

Vec GradedCategory::compose(std::size_t x, std::size_t y, std::size_t z, int i, int j, const Vec& f,
                            const Vec& g) const {
    if (!in_window(i) || !in_window(j) || !in_window(static_cast<long long>(i) + j))
        throw WindowTooSmall(deg_msg("out-of-window composition", static_cast<long long>(i) + j, window_));
    return comp_(x, y, z, i, j, f, g);
}

void GradedCategory::set_sigma(std::vector<std::size_t> obj, SigmaHom h) {
    sigma_obj_ = std::move(obj);
    sigma_hom_ = std::move(h);
}

std::size_t GradedCategory::endo_dim(int n) const {
    std::size_t s = 0;
    for (std::size_t x = 0; x < num_objects(); ++x) s += hom_dim(x, x, n);
    return s;
}

std::size_t GradedCategory::endo_offset(std::size_t x, int n) const {
    std::size_t s = 0;
    for (std::size_t y = 0; y < x; ++y) s += hom_dim(y, y, n);
    return s;
}

Vec GradedCategory::endo_part(const Vec& e, std::size_t x, int n) const {
    std::size_t off = endo_offset(x, n), d = hom_dim(x, x, n);
    return Vec(e.begin() + off, e.begin() + off + d);
}

Vec GradedCategory::endo_compose(int n, const Vec& a, int k, const Vec& u) const {
    Vec out;
    for (std::size_t x = 0; x < num_objects(); ++x) {
        Vec ax = endo_part(a, x, n), ux = endo_part(u, x, k);
        Vec c = (vzero(ax) || vzero(ux)) ? Vec(hom_dim(x, x, n + k), 0) : compose(x, x, x, k, n, ux, ax);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

Vec GradedCategory::endo_power(int n, const Vec& a, unsigned e) const {
    if (e == 0) throw CategoryError("zeroth power");
    Vec r = a;
    for (unsigned i = 1; i < e; ++i) r = endo_compose(static_cast<int>(i) * n, r, n, a);
    return r;
}

std::optional<std::string> GradedCategory::check(int bound) const {
    std::size_t N = num_objects();
    auto deg_ok = [&](long long n) { return n >= -bound && n <= bound && in_window(n); };
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y)
            for (int n = -bound; n <= bound; ++n) {
                if (!in_window(n)) continue;
                for (std::size_t k = 0; k < hom_dim(x, y, n); ++k) {
                    Vec f = unit_vec(hom_dim(x, y, n), k);
                    if (compose(x, x, y, 0, n, ids_[x], f) != f || compose(x, y, y, n, 0, f, ids_[y]) != f)
                        return "identity law fails at " + objects_[x] + " -> " + objects_[y] + " degree " + std::to_string(n);
                }
            }
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y)
            for (std::size_t z = 0; z < N; ++z)
                for (std::size_t w = 0; w < N; ++w)
                    for (int i = -bound; i <= bound; ++i)
                        for (int j = -bound; j <= bound; ++j)
                            for (int k = -bound; k <= bound; ++k) {
                                if (!deg_ok(i) || !deg_ok(j) || !deg_ok(k) || !in_window(i + j) || !in_window(j + k) ||
                                    !in_window(i + j + k))
                                    continue;
                                std::size_t df = hom_dim(x, y, i), dg = hom_dim(y, z, j), dh = hom_dim(z, w, k);
                                for (std::size_t a = 0; a < df; ++a)
                                    for (std::size_t b = 0; b < dg; ++b)
                                        for (std::size_t c = 0; c < dh; ++c) {
                                            Vec f = unit_vec(df, a), g = unit_vec(dg, b), h = unit_vec(dh, c);
                                            Vec l = compose(x, z, w, i + j, k, compose(x, y, z, i, j, f, g), h);
                                            Vec r = compose(x, y, w, i, j + k, f, compose(y, z, w, j, k, g, h));
                                            if (l != r)
                                                return "associativity fails at degrees " + std::to_string(i) + "," +
                                                       std::to_string(j) + "," + std::to_string(k);
                                        }
                            }
    return std::nullopt;
}

GradedCategory orbit_category(const FiniteCategory& c, const CatAutomorphism& sigma, int window) {
    if (auto bad = sigma.check(c)) throw CategoryError("sigma: " + *bad);
    struct Data {
        FiniteCategory c;
        int D;
        std::vector<CatAutomorphism> pow;  // Sigma^k at index k + 2D
        const CatAutomorphism& at(long long k) const { return pow.at(static_cast<std::size_t>(k + 2 * D)); }
    };
    auto data = std::make_shared<Data>(Data{c, window, {}});
    CatAutomorphism id = CatAutomorphism::identity(c), inv = sigma.inverse();
    std::vector<CatAutomorphism> neg{id}, posv{id};
    for (int k = 1; k <= 2 * window; ++k) {
        posv.push_back(posv.back().then(sigma));
        neg.push_back(neg.back().then(inv));
    }
    for (int k = 2 * window; k >= 1; --k) data->pow.push_back(neg[k]);
    for (int k = 0; k <= 2 * window; ++k) data->pow.push_back(posv[k]);

    auto dims = [data](std::size_t x, std::size_t y, int n) { return data->c.hom_dim(x, data->at(n).obj[y]); };
    auto comp = [data](std::size_t x, std::size_t y, std::size_t z, int i, int j, const Vec& f, const Vec& g) {
        // f: x -> S^i y, g: y -> S^j z; result S^i(g) f: x -> S^{i+j} z
        const CatAutomorphism& si = data->at(i);
        std::size_t sy = si.obj[y], sz = data->at(j).obj[z], sisz = si.obj[sz];
        Vec sg = si.hom[y][sz].apply(g);
        return data->c.compose(x, sy, sisz, f, sg);
    };
    std::vector<Vec> ids;
    for (std::size_t x = 0; x < c.num_objects(); ++x) ids.push_back(c.identity(x));
    GradedCategory g(c.p(), c.names(), window, std::min(window, 1), dims, comp, ids);
    auto sh = [data](std::size_t x, std::size_t y, int n) {
        // C(x, S^n y) -> C(Sx, S^{n+1} y)
        std::size_t sny = data->at(n).obj[y];
        return data->at(1).hom[x][sny];
    };
    g.set_sigma(sigma.obj, sh);
    return g;
}

CategoryInput category_from_json(const nlohmann::json& j) {
    try {
        Algebra a = from_structure_constants(j.at("algebra"));
        std::vector<Vec> idem;
        if (j.contains("idempotents"))
            for (auto& e : j.at("idempotents")) idem.push_back(e.get<Vec>());
        else
            idem.push_back(a.unit());
        std::vector<std::string> names;
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
        FiniteCategory c(a, idem, names);
        CatAutomorphism s = CatAutomorphism::identity(c);
        if (j.contains("sigma")) {
            std::vector<Vec> rows;
            for (auto& r : j.at("sigma")) rows.push_back(r.get<Vec>());
            for (auto& r : rows)
                for (auto& v : r) v %= a.p();
            s = CatAutomorphism::from_algebra(c, MatrixFp::from_rows(a.p(), a.dim(), rows));
        }
        return {c, s};
    } catch (const nlohmann::json::exception& e) {
        throw CategoryError(std::string("category json: ") + e.what());
    }
}

// ---------- invariants ----------

Subspace sigma_invariants(const MatrixFp& action) {
    return kernel(action - MatrixFp::identity(action.p, action.rows));
}

Quotient sigma_coinvariants(const MatrixFp& action, u32 a) {
    MatrixFp scaled = action;
    for (auto& v : scaled.a) v = fmul(v, a, action.p);
    MatrixFp rel = MatrixFp::identity(action.p, action.rows) - scaled;
    return Quotient(Subspace::full(action.p, action.rows), image(rel));
}

void GradedInvariants::need(long long n, const char* what) const {
    if (std::llabs(n) + a_.generator_bound() > a_.window()) throw WindowTooSmall(deg_msg(what, n, a_.window()));
}

CenterComponent GradedInvariants::center_for(int n, const std::vector<int>& degrees) const {
    u32 p = a_.p();
    std::size_t N = a_.num_objects(), dim = a_.endo_dim(n);
    std::vector<Vec> rows;
    for (int j : degrees)
        for (std::size_t x = 0; x < N; ++x)
            for (std::size_t y = 0; y < N; ++y) {
                std::size_t df = a_.hom_dim(x, y, j);
                if (df == 0) continue;
                std::size_t dt = a_.hom_dim(x, y, n + j);
                u32 sg = koszul(n, j, p);
                for (std::size_t k = 0; k < df; ++k) {
                    Vec f = unit_vec(df, k);
                    // columns: unknown coordinates of m; row block: f m_x - (-1)^{nj} m_y f
                    MatrixFp blk(p, dt, dim);
                    std::size_t ox = a_.endo_offset(x, n), oy = a_.endo_offset(y, n);
                    for (std::size_t c = 0; c < a_.hom_dim(x, x, n); ++c) {
                        Vec v = a_.compose(x, x, y, n, j, unit_vec(a_.hom_dim(x, x, n), c), f);
                        for (std::size_t r = 0; r < dt; ++r) blk(r, ox + c) = fadd(blk(r, ox + c), v[r], p);
                    }
                    for (std::size_t c = 0; c < a_.hom_dim(y, y, n); ++c) {
                        Vec v = a_.compose(x, y, y, j, n, f, unit_vec(a_.hom_dim(y, y, n), c));
                        for (std::size_t r = 0; r < dt; ++r)
                            blk(r, oy + c) = fsub(blk(r, oy + c), fmul(sg, v[r], p), p);
                    }
                    for (std::size_t r = 0; r < dt; ++r) rows.push_back(blk.row(r));
                }
            }
    if (rows.empty()) return {n, Subspace::full(p, dim)};
    return {n, kernel(MatrixFp::from_rows(p, dim, rows))};
}

const CenterComponent& GradedInvariants::center(int n) {
    auto it = center_.find(n);
    if (it != center_.end()) return it->second;
    need(n, "center");
    std::vector<int> degs;
    for (int j = -a_.generator_bound(); j <= a_.generator_bound(); ++j) degs.push_back(j);
    return center_.emplace(n, center_for(n, degs)).first->second;
}

const Subspace& GradedInvariants::commutators(int n) {
    auto it = comm_.find(n);
    if (it != comm_.end()) return it->second;
    need(n, "commutators");
    u32 p = a_.p();
    std::size_t N = a_.num_objects(), dim = a_.endo_dim(n);
    std::vector<Vec> gens;
    int g = a_.generator_bound();
    for (int i = -g; i <= g; ++i) {
        int j = n - i;
        for (std::size_t x = 0; x < N; ++x)
            for (std::size_t y = 0; y < N; ++y) {
                std::size_t df = a_.hom_dim(x, y, i), du = a_.hom_dim(y, x, j);
                if (df == 0 || du == 0) continue;
                u32 sg = koszul(i, j, p);
                for (std::size_t a = 0; a < df; ++a)
                    for (std::size_t b = 0; b < du; ++b) {
                        Vec f = unit_vec(df, a), u = unit_vec(du, b);
                        Vec fu = a_.compose(y, x, y, j, i, u, f);  // in End(y)
                        Vec uf = a_.compose(x, y, x, i, j, f, u);  // in End(x)
                        Vec v(dim, 0);
                        std::size_t oy = a_.endo_offset(y, n), ox = a_.endo_offset(x, n);
                        for (std::size_t k = 0; k < fu.size(); ++k) v[oy + k] = fadd(v[oy + k], fu[k], p);
                        for (std::size_t k = 0; k < uf.size(); ++k) v[ox + k] = fsub(v[ox + k], fmul(sg, uf[k], p), p);
                        gens.push_back(v);
                    }
            }
    }
    return comm_.emplace(n, Subspace::span(p, dim, gens)).first->second;
}

const AbComponent& GradedInvariants::ab(int n) {
    auto it = ab_.find(n);
    if (it != ab_.end()) return it->second;
    const Subspace& c = commutators(n);
    return ab_.emplace(n, AbComponent{n, Quotient(Subspace::full(a_.p(), a_.endo_dim(n)), c)}).first->second;
}

const MatrixFp& GradedInvariants::xi(int n) {
    auto it = xi_.find(n);
    if (it != xi_.end()) return it->second;
    long long np = static_cast<long long>(n) * a_.p();
    need(np, "xi_p");
    const AbComponent& src = ab(n);
    const AbComponent& dst = ab(static_cast<int>(np));
    MatrixFp m(a_.p(), dst.q.dim(), src.q.dim());
    for (std::size_t c = 0; c < src.q.dim(); ++c) {
        Vec rep = src.q.lift(unit_vec(src.q.dim(), c));
        m.set_col(c, dst.q.project(a_.endo_power(n, rep, a_.p())));
    }
    return xi_.emplace(n, m).first->second;
}

MatrixFp GradedInvariants::xi_power(int n, unsigned r) {
    MatrixFp m = MatrixFp::identity(a_.p(), ab(n).q.dim());
    long long deg = n;
    for (unsigned i = 0; i < r; ++i) {
        need(deg * a_.p(), "xi_p power");
        m = xi(static_cast<int>(deg)) * m;
        deg *= a_.p();
    }
    return m;
}

Subspace GradedInvariants::t_r(unsigned r, int n) {
    if (r == 0) return Subspace::zero(a_.p(), ab(n).q.dim());
    return kernel(xi_power(n, r));
}

std::vector<Vec> GradedInvariants::t_r_lifts(unsigned r, int n) {
    std::vector<Vec> out;
    const AbComponent& q = ab(n);
    for (auto& v : t_r(r, n).vectors()) out.push_back(q.q.lift(v));
    return out;
}

Subspace GradedInvariants::k_rs_degree(unsigned r, int s, int n, Side side) {
    u32 p = a_.p();
    const CenterComponent& z = center(n);
    std::vector<Vec> reps = t_r_lifts(r, s - n);
    const AbComponent& target = ab(s);
    auto zb = z.space.vectors();
    if (reps.empty() || zb.empty()) return z.space;
    std::vector<Vec> cols;
    for (auto& zi : zb) {
        Vec col;
        for (auto& u : reps) {
            if (side != Side::right) {
                Vec v = target.q.project(a_.endo_compose(n, zi, s - n, u));
                col.insert(col.end(), v.begin(), v.end());
            }
            if (side != Side::left) {
                Vec v = target.q.project(a_.endo_compose(s - n, u, n, zi));
                col.insert(col.end(), v.begin(), v.end());
            }
        }
        cols.push_back(col);
    }
    MatrixFp m(p, cols[0].size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
    std::vector<Vec> out;
    for (auto& coef : kernel(m).vectors()) {
        Vec v(a_.endo_dim(n), 0);
        for (std::size_t i = 0; i < zb.size(); ++i)
            if (coef[i]) v = vadd(v, vscale(zb[i], coef[i], p), p);
        out.push_back(v);
    }
    return Subspace::span(p, a_.endo_dim(n), out);
}

GradedIdeal GradedInvariants::k_rs(unsigned r, int s, int lo, int hi) {
    GradedIdeal g;
    for (int n = lo; n <= hi; ++n) {
        try {
            g.degrees.emplace(n, k_rs_degree(r, s, n));
            g.used[n] = {s};
        } catch (const WindowTooSmall&) {
            g.indeterminate.push_back(n);
        }
    }
    return g;
}

GradedIdeal GradedInvariants::k_r(unsigned r, int lo, int hi) {
    GradedIdeal g;
    int D = a_.window();
    for (int n = lo; n <= hi; ++n) {
        std::optional<Subspace> acc;
        std::vector<int> used;
        for (int s = n - D; s <= n + D; ++s) {
            try {
                Subspace k = k_rs_degree(r, s, n);
                acc = acc ? intersect(*acc, k) : k;
                used.push_back(s);
            } catch (const WindowTooSmall&) {
            }
        }
        if (acc) {
            g.degrees.emplace(n, *acc);
            g.used[n] = used;
        } else {
            g.indeterminate.push_back(n);
        }
    }
    return g;
}

GradedIdeal GradedInvariants::r_s(int s, unsigned r_max, int lo, int hi) {
    GradedIdeal g;
    for (int n = lo; n <= hi; ++n) {
        try {
            Subspace acc = center(n).space;
            std::vector<int> used;
            for (unsigned r = 0; r <= r_max; ++r) {
                acc = intersect(acc, k_rs_degree(r, s, n));
                used.push_back(static_cast<int>(r));
            }
            g.degrees.emplace(n, acc);
            g.used[n] = used;
        } catch (const WindowTooSmall&) {
            g.indeterminate.push_back(n);
        }
    }
    return g;
}

GradedIdeal GradedInvariants::reynolds(unsigned r_max, int lo, int hi) {
    GradedIdeal g;
    for (int n = lo; n <= hi; ++n) {
        std::optional<Subspace> acc;
        for (unsigned r = 0; r <= r_max; ++r) {
            GradedIdeal k = k_r(r, n, n);
            if (!k.certified(n)) continue;
            acc = acc ? intersect(*acc, k.degrees.at(n)) : k.degrees.at(n);
        }
        if (acc)
            g.degrees.emplace(n, *acc);
        else
            g.indeterminate.push_back(n);
    }
    return g;
}

u32 GradedInvariants::pair(const TraceData& t, int n, const Vec& f, const Vec& g) const {
    u32 p = a_.p();
    Vec fg = a_.endo_compose(n, f, t.d - n, g);
    u32 s = 0;
    for (std::size_t x = 0; x < a_.num_objects(); ++x) {
        Vec part = a_.endo_part(fg, x, t.d);
        for (std::size_t k = 0; k < part.size(); ++k) s = fadd(s, fmul(part[k], t.tr[x][k], p), p);
    }
    return s;
}

GradedIdeal GradedInvariants::k_r_via_perp(const TraceData& t, unsigned r, int lo, int hi) {
    GradedIdeal g;
    u32 p = a_.p();
    for (int n = lo; n <= hi; ++n) {
        try {
            const CenterComponent& z = center(n);
            auto reps = t_r_lifts(r, t.d - n);
            auto zb = z.space.vectors();
            if (reps.empty() || zb.empty()) {
                g.degrees.emplace(n, z.space);
                continue;
            }
            MatrixFp m(p, reps.size(), zb.size());
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t c = 0; c < zb.size(); ++c) m(i, c) = pair(t, n, zb[c], reps[i]);
            std::vector<Vec> out;
            for (auto& coef : kernel(m).vectors()) {
                Vec v(a_.endo_dim(n), 0);
                for (std::size_t c = 0; c < zb.size(); ++c)
                    if (coef[c]) v = vadd(v, vscale(zb[c], coef[c], p), p);
                out.push_back(v);
            }
            g.degrees.emplace(n, Subspace::span(p, a_.endo_dim(n), out));
        } catch (const WindowTooSmall&) {
            g.indeterminate.push_back(n);
        }
    }
    return g;
}

GradedInvariants::ZetaMap GradedInvariants::zeta_r(const TraceData& t, unsigned r, int m) {
    u32 p = a_.p();
    const CenterComponent& zm = center(m);
    auto fb = zm.space.vectors();
    long long pr = 1;
    for (unsigned i = 0; i < r; ++i) pr *= p;
    long long k = t.d - m;
    if (k % pr != 0) return {m, m, MatrixFp(p, a_.endo_dim(m), fb.size())};
    int q = static_cast<int>(k / pr), to = t.d - q;
    const CenterComponent& zt = center(to);
    auto tb = zt.space.vectors();
    const AbComponent& abq = ab(q);
    const AbComponent& abk = ab(static_cast<int>(k));
    MatrixFp xr = xi_power(q, r);
    // Gram of Z^to against Ab_q
    MatrixFp gram(p, abq.q.dim(), tb.size());
    for (std::size_t g = 0; g < abq.q.dim(); ++g)
        for (std::size_t j = 0; j < tb.size(); ++j)
            gram(g, j) = pair(t, to, tb[j], abq.q.lift(unit_vec(abq.q.dim(), g)));
    if (rank(gram) != tb.size() || rank(gram) != abq.q.dim())
        throw CategoryError("pairing between degrees " + std::to_string(to) + " and " + std::to_string(q) +
                            " is degenerate");
    MatrixFp out(p, a_.endo_dim(to), fb.size());
    for (std::size_t i = 0; i < fb.size(); ++i) {
        Vec phi(abq.q.dim());
        for (std::size_t g = 0; g < abq.q.dim(); ++g)
            phi[g] = pair(t, m, fb[i], abk.q.lift(xr.col(g)));
        Vec c = solve(gram, phi);
        Vec v(a_.endo_dim(to), 0);
        for (std::size_t j = 0; j < tb.size(); ++j)
            if (c[j]) v = vadd(v, vscale(tb[j], c[j], p), p);
        out.set_col(i, v);
    }
    return {m, to, out};
}

GradedIdeal GradedInvariants::zeta_image(const TraceData& t, unsigned r, int lo, int hi) {
    GradedIdeal g;
    long long pr = 1;
    for (unsigned i = 0; i < r; ++i) pr *= a_.p();
    for (int n = lo; n <= hi; ++n) {
        try {
            long long m = t.d - pr * (t.d - n);
            need(m, "zeta");
            ZetaMap z = zeta_r(t, r, static_cast<int>(m));
            g.degrees.emplace(n, image(z.m));
        } catch (const WindowTooSmall&) {
            g.indeterminate.push_back(n);
        }
    }
    return g;
}

TraceData trace_from_form(const FiniteCategory& c) {
    const auto& g = c.algebra().form();
    if (!g) throw CategoryError("the algebra has no symmetrizing form");
    u32 p = c.p();
    Vec lambda = g->transpose().apply(c.algebra().unit());  // lambda_j = sum_i 1_i g(i,j)
    TraceData t;
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
        Vec tr(c.hom_dim(x, x), 0);
        for (std::size_t k = 0; k < tr.size(); ++k) {
            Vec e = c.embed(x, x, unit_vec(tr.size(), k));
            u32 s = 0;
            for (std::size_t j = 0; j < e.size(); ++j) s = fadd(s, fmul(lambda[j], e[j], p), p);
            tr[k] = s;
        }
        t.tr.push_back(tr);
    }
    return t;
}

std::optional<std::string> cy_check(const GradedCategory& a, const TraceData& t, bool weak) {
    u32 p = a.p();
    std::size_t N = a.num_objects();
    if (t.tr.size() != N) return "trace data needs one functional per object";
    if (!a.in_window(t.d)) return "degree d outside the window";
    auto tr = [&](std::size_t x, const Vec& v) {
        u32 s = 0;
        for (std::size_t k = 0; k < v.size(); ++k) s = fadd(s, fmul(v[k], t.tr[x][k], p), p);
        return s;
    };
    for (std::size_t x = 0; x < N; ++x)
        if (t.tr[x].size() != a.hom_dim(x, x, t.d)) return "trace functional of " + a.objects()[x] + " has the wrong length";
    for (int m = -a.window(); m <= a.window(); ++m) {
        if (weak && m != 0) continue;
        if (!a.in_window(t.d - m)) continue;
        for (std::size_t x = 0; x < N; ++x)
            for (std::size_t y = 0; y < N; ++y) {
                std::size_t dg = a.hom_dim(x, y, m), df = a.hom_dim(y, x, t.d - m);
                MatrixFp gram(p, df, dg);
                for (std::size_t i = 0; i < df; ++i)
                    for (std::size_t j = 0; j < dg; ++j) {
                        Vec f = unit_vec(df, i), g = unit_vec(dg, j);
                        u32 lhs = tr(x, a.compose(x, y, x, m, t.d - m, g, f));
                        u32 rhs = fmul(koszul(m, t.d - m, p), tr(y, a.compose(y, x, y, t.d - m, m, f, g)), p);
                        gram(i, j) = lhs;
                        if (lhs != rhs) {
                            std::ostringstream o;
                            o << "trace identity fails at m=" << m << " x=" << a.objects()[x] << " y=" << a.objects()[y]
                              << " f=#" << i << " g=#" << j;
                            return o.str();
                        }
                    }
                if (df != dg || rank(gram) != dg) {
                    std::ostringstream o;
                    o << "degenerate pairing at m=" << m << " x=" << a.objects()[x] << " y=" << a.objects()[y];
                    return o.str();
                }
            }
    }
    return std::nullopt;
}

}  // namespace kul
