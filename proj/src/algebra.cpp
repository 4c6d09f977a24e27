#include "kul/algebra.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace kul {

using nlohmann::json;

Algebra::Algebra(u32 p, std::vector<std::string> labels, std::vector<Vec> table, Vec unit)
    : p_(p), dim_(labels.size()), labels_(std::move(labels)), table_(std::move(table)), unit_(std::move(unit)) {
    require_prime(p_);
    if (table_.size() != dim_ * dim_) throw AlgebraError("table must have dim*dim entries");
    for (auto& v : table_) {
        if (v.size() != dim_) throw AlgebraError("table entry of wrong length");
        for (auto& x : v) x %= p_;
    }
    if (unit_.size() != dim_) throw AlgebraError("unit of wrong length");
    for (auto& x : unit_) x %= p_;
    for (std::size_t i = 0; i < dim_; ++i) {
        Vec e = basis(i);
        if (mul(unit_, e) != e || mul(e, unit_) != e)
            throw AlgebraError("bad unit: fails on basis element " + labels_[i]);
    }
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                Vec l = mul(product(i, j), basis(k));
                Vec r = mul(basis(i), product(j, k));
                if (l != r)
                    throw AlgebraError("not associative at (" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")");
            }
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
    if (a.size() != dim_ || b.size() != dim_) throw DimensionError("mul: element of wrong length");
    std::vector<u64> acc(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (!b[j]) continue;
            u64 c = static_cast<u64>(a[i]) * b[j] % p_;
            const Vec& t = table_[i * dim_ + j];
            for (std::size_t k = 0; k < dim_; ++k)
                if (t[k]) acc[k] = (acc[k] + c * t[k]) % p_;
        }
    }
    return Vec(acc.begin(), acc.end());
}

Vec Algebra::power(const Vec& a, unsigned long long e) const {
    Vec r = unit_, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

MatrixFp Algebra::left_mult(const Vec& a) const {
    MatrixFp m(p_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) m.set_col(j, mul(a, basis(j)));
    return m;
}

MatrixFp Algebra::right_mult(const Vec& a) const {
    MatrixFp m(p_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) m.set_col(j, mul(basis(j), a));
    return m;
}

void Algebra::set_form(const MatrixFp& gram) {
    if (gram.rows != dim_ || gram.cols != dim_ || gram.p != p_) throw AlgebraError("form has wrong shape");
    form_ = gram;
}

void Algebra::set_radical(const Subspace& j) {
    if (j.ambient() != dim_ || j.p() != p_) throw AlgebraError("radical has wrong ambient dimension");
    radical_ = j;
}

json Algebra::to_json() const {
    json j;
    j["p"] = p_;
    j["dim"] = dim_;
    j["labels"] = labels_;
    j["unit"] = unit_;
    json t = json::array();
    for (std::size_t i = 0; i < dim_; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < dim_; ++k) row.push_back(product(i, k));
        t.push_back(row);
    }
    j["table"] = t;
    if (form_) {
        json g = json::array();
        for (std::size_t i = 0; i < dim_; ++i) g.push_back(form_->row(i));
        j["form"] = g;
    }
    if (radical_) j["radical"] = radical_->vectors();
    return j;
}

std::string Algebra::format(const Vec& a) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!a[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (a[i] != 1) os << a[i] << '*';
        os << labels_[i];
    }
    if (first) os << '0';
    return os.str();
}

// ---- json -------------------------------------------------------------

static std::vector<std::vector<std::size_t>> index_table(const json& j) {
    return j.get<std::vector<std::vector<std::size_t>>>();
}

Algebra from_structure_constants(const json& s) {
    try {
        if (s.contains("construct")) {
            std::string kind = s.at("construct");
            if (kind == "group") {
                Algebra a = group_algebra(index_table(s.at("cayley")), s.at("p").get<u32>());
                return a;
            }
            if (kind == "quiver") {
                std::vector<QuiverArrow> arrows;
                for (auto& a : s.at("arrows"))
                    arrows.push_back({a.at(0).get<std::size_t>(), a.at(1).get<std::size_t>(),
                                      a.size() > 2 ? a.at(2).get<std::string>() : "a" + std::to_string(arrows.size())});
                return monomial_quiver_algebra(s.at("p").get<u32>(), s.at("vertices").get<std::size_t>(), arrows,
                                               index_table(s.value("relations", json::array())));
            }
            if (kind == "matrix") return matrix_algebra(from_structure_constants(s.at("base")), s.at("n").get<std::size_t>());
            throw AlgebraError("unknown constructor '" + kind + "'");
        }
        u32 p = s.at("p").get<u32>();
        std::size_t dim = s.at("dim").get<std::size_t>();
        std::vector<std::string> labels;
        if (s.contains("labels"))
            labels = s.at("labels").get<std::vector<std::string>>();
        else
            for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
        if (labels.size() != dim) throw AlgebraError("labels length differs from dim");
        auto t = s.at("table");
        if (t.size() != dim) throw AlgebraError("table must have dim rows");
        std::vector<Vec> table;
        for (auto& row : t) {
            if (row.size() != dim) throw AlgebraError("table row of wrong length");
            for (auto& e : row) table.push_back(e.get<Vec>());
        }
        Algebra a(p, labels, table, s.at("unit").get<Vec>());
        if (s.contains("form")) {
            auto rows = s.at("form").get<std::vector<Vec>>();
            a.set_form(MatrixFp::from_rows(p, dim, rows));
        }
        if (s.contains("radical")) a.set_radical(Subspace::span(p, dim, s.at("radical").get<std::vector<Vec>>()));
        return a;
    } catch (const json::exception& e) {
        throw AlgebraError(std::string("malformed algebra json: ") + e.what());
    }
}

Algebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AlgebraError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw AlgebraError("malformed json in " + path + ": " + e.what());
    }
    return from_structure_constants(j);
}

// ---- constructors ------------------------------------------------------

Algebra monomial_quiver_algebra(u32 p, std::size_t nv, const std::vector<QuiverArrow>& arrows,
                                const std::vector<std::vector<std::size_t>>& rels) {
    for (auto& a : arrows)
        if (a.src >= nv || a.tgt >= nv) throw AlgebraError("arrow endpoint out of range");
    std::size_t maxrel = 0;
    for (auto& r : rels) {
        if (r.empty()) throw AlgebraError("empty relation");
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k] >= arrows.size()) throw AlgebraError("relation uses unknown arrow");
            if (k && arrows[r[k - 1]].tgt != arrows[r[k]].src) throw AlgebraError("relation is not a path");
        }
        maxrel = std::max(maxrel, r.size());
    }
    auto has_rel = [&](const std::vector<std::size_t>& path) {
        for (auto& r : rels) {
            if (r.size() > path.size()) continue;
            for (std::size_t s = 0; s + r.size() <= path.size(); ++s)
                if (std::equal(r.begin(), r.end(), path.begin() + s)) return true;
        }
        return false;
    };
    // nonzero paths by length. With k = longest relation - 1, a nonzero path of length N_k + k
    // passes N_k + 1 windows of length k, so one repeats and the path can be pumped forever.
    const std::size_t k = maxrel ? maxrel - 1 : 0;
    std::size_t bound = k == 0 ? nv : 0;
    std::vector<std::vector<std::vector<std::size_t>>> by_len(1);
    for (std::size_t len = 1;; ++len) {
        std::vector<std::vector<std::size_t>> next;
        if (len == 1) {
            for (std::size_t a = 0; a < arrows.size(); ++a)
                if (!has_rel({a})) next.push_back({a});
        } else {
            for (auto& path : by_len[len - 1])
                for (std::size_t a = 0; a < arrows.size(); ++a) {
                    if (arrows[path.back()].tgt != arrows[a].src) continue;
                    auto q = path;
                    q.push_back(a);
                    if (!has_rel(q)) next.push_back(q);
                }
        }
        if (next.empty()) break;
        by_len.push_back(std::move(next));
        if (len == k) bound = by_len[k].size() + k;
        if (bound && len >= bound)
            throw AlgebraError("infinite-dimensional: a nonzero path of length " + std::to_string(len) + " exists");
    }
    // basis: vertices then paths (length, then lexicographic in arrow indices, which generation order gives)
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < nv; ++v) labels.push_back(nv == 1 ? "1" : "e" + std::to_string(v));
    for (std::size_t len = 1; len < by_len.size(); ++len) {
        auto ps = by_len[len];
        std::sort(ps.begin(), ps.end());
        for (auto& q : ps) {
            paths.push_back(q);
            std::string l;
            for (auto a : q) l += arrows[a].label;
            labels.push_back(l);
        }
    }
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = nv + i;
    std::size_t d = nv + paths.size();
    auto src = [&](std::size_t i) { return i < nv ? i : arrows[paths[i - nv].front()].src; };
    auto tgt = [&](std::size_t i) { return i < nv ? i : arrows[paths[i - nv].back()].tgt; };
    std::vector<Vec> table;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Vec v(d, 0);
            if (tgt(i) == src(j)) {
                if (i < nv)
                    v[j] = 1;
                else if (j < nv)
                    v[i] = 1;
                else {
                    auto q = paths[i - nv];
                    q.insert(q.end(), paths[j - nv].begin(), paths[j - nv].end());
                    auto it = index.find(q);
                    if (it != index.end()) v[it->second] = 1;
                }
            }
            table.push_back(v);
        }
    Vec unit(d, 0);
    for (std::size_t v = 0; v < nv; ++v) unit[v] = 1;
    Algebra a(p, labels, table, unit);
    std::vector<Vec> rad;
    for (std::size_t i = nv; i < d; ++i) rad.push_back(unit_vec(d, i));
    a.set_radical(Subspace::span(p, d, rad));
    return a;
}

Algebra group_algebra(const std::vector<std::vector<std::size_t>>& t, u32 p) {
    require_prime(p);
    std::size_t n = t.size();
    if (n == 0) throw AlgebraError("not a group: empty table");
    for (auto& row : t) {
        if (row.size() != n) throw AlgebraError("not a group: table not square");
        for (auto x : row)
            if (x >= n) throw AlgebraError("not a group: entry out of range");
    }
    std::size_t e = n;
    for (std::size_t g = 0; g < n && e == n; ++g) {
        bool ok = true;
        for (std::size_t h = 0; h < n; ++h) ok = ok && t[g][h] == h && t[h][g] == h;
        if (ok) e = g;
    }
    if (e == n) throw AlgebraError("not a group: no identity");
    for (std::size_t g = 0; g < n; ++g) {
        bool inv = false;
        for (std::size_t h = 0; h < n; ++h) inv = inv || (t[g][h] == e && t[h][g] == e);
        if (!inv) throw AlgebraError("not a group: element " + std::to_string(g) + " has no inverse");
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t k = 0; k < n; ++k)
                if (t[t[g][h]][k] != t[g][t[h][k]])
                    throw AlgebraError("not a group: associativity fails at (" + std::to_string(g) + "," +
                                       std::to_string(h) + "," + std::to_string(k) + ")");
    }
    std::vector<std::string> labels;
    for (std::size_t g = 0; g < n; ++g) labels.push_back("g" + std::to_string(g));
    std::vector<Vec> table;
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) table.push_back(unit_vec(n, t[g][h]));
    Algebra a(p, labels, table, unit_vec(n, e));
    MatrixFp gram(p, n, n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) gram(g, h) = t[g][h] == e ? 1 : 0;
    a.set_form(gram);
    return a;
}

Algebra matrix_algebra(const Algebra& base, std::size_t n) {
    if (n == 0) throw AlgebraError("matrix size must be positive");
    if (n == 1) return base;
    const std::size_t d = base.dim(), D = n * n * d;
    const u32 p = base.p();
    auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * d + k; };
    std::vector<std::string> labels(D);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < d; ++k)
                labels[idx(i, j, k)] = "E" + std::to_string(i + 1) + std::to_string(j + 1) + "*" + base.labels()[k];
    std::vector<Vec> table(D * D, Vec(D, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t l = 0; l < n; ++l)
                    for (std::size_t b = 0; b < d; ++b) {
                        // E_ij a * E_jl b = E_il ab
                        const Vec& ab = base.product(a, b);
                        Vec& out = table[idx(i, j, a) * D + idx(j, l, b)];
                        for (std::size_t c = 0; c < d; ++c) out[idx(i, l, c)] = ab[c];
                    }
    Vec unit(D, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < d; ++c) unit[idx(i, i, c)] = base.unit()[c];
    Algebra m(p, labels, table, unit);
    if (base.form()) {
        MatrixFp g(p, D, D);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) g(idx(i, j, a), idx(j, i, b)) = (*base.form())(a, b);
        m.set_form(g);
    }
    if (base.recorded_radical()) {
        std::vector<Vec> rad;
        for (auto& v : base.recorded_radical()->vectors())
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Vec w(D, 0);
                    for (std::size_t c = 0; c < d; ++c) w[idx(i, j, c)] = v[c];
                    rad.push_back(w);
                }
        m.set_radical(Subspace::span(p, D, rad));
    }
    return m;
}

// ---- structure ---------------------------------------------------------

Subspace center(const Algebra& a) {
    const std::size_t d = a.dim();
    MatrixFp sys(a.p(), 0, d);
    for (std::size_t i = 0; i < d; ++i) sys = vstack(sys, a.right_mult(a.basis(i)) - a.left_mult(a.basis(i)));
    return kernel(sys);
}

Subspace commutator_subspace(const Algebra& a) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) vs.push_back(vsub(a.product(i, j), a.product(j, i), a.p()));
    return Subspace::span(a.p(), a.dim(), vs);
}

Subspace product_space(const Algebra& a, const Subspace& x, const Subspace& y) {
    std::vector<Vec> vs;
    for (auto& u : x.vectors())
        for (auto& v : y.vectors()) vs.push_back(a.mul(u, v));
    return Subspace::span(a.p(), a.dim(), vs);
}

bool is_ideal(const Algebra& a, const Subspace& s) {
    for (auto& v : s.vectors())
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (!contains(s, a.mul(v, a.basis(i))) || !contains(s, a.mul(a.basis(i), v))) return false;
    return true;
}

std::size_t nilpotency_index(const Algebra& a, const Subspace& j) {
    if (j.dim() == 0) return 1;
    Subspace pw = j;
    for (std::size_t k = 1; k <= a.dim() + 1; ++k) {
        if (pw.dim() == 0) return k;
        Subspace next = product_space(a, pw, j);
        if (next == pw) return 0;
        pw = next;
    }
    return 0;
}

namespace {

// tr(Lhat^e) mod m for the integer lift of a matrix with entries in [0,p)
u64 lifted_trace_power(const MatrixFp& l, u64 e, u64 m) {
    const std::size_t n = l.rows;
    using M = std::vector<u64>;
    auto mult = [&](const M& x, const M& y) {
        M r(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                u64 v = x[i * n + k];
                if (!v) continue;
                for (std::size_t j = 0; j < n; ++j) r[i * n + j] = (r[i * n + j] + v * y[k * n + j]) % m;
            }
        return r;
    };
    M base(l.a.begin(), l.a.end()), res(n * n, 0);
    for (auto& x : base) x %= m;
    for (std::size_t i = 0; i < n; ++i) res[i * n + i] = 1 % m;
    while (e) {
        if (e & 1) res = mult(res, base);
        e >>= 1;
        if (e) base = mult(base, base);
    }
    u64 t = 0;
    for (std::size_t i = 0; i < n; ++i) t = (t + res[i * n + i]) % m;
    return t;
}

}  // namespace

Subspace radical(const Algebra& a) {
    if (a.recorded_radical()) return *a.recorded_radical();
    const u32 p = a.p();
    const std::size_t d = a.dim();
    // iterated trace-form refinement over the integer lift of the regular representation
    Subspace cur = Subspace::full(p, d);
    std::size_t imax = 0;
    for (u64 q = p; q <= d; q *= p) ++imax;
    u64 pi = 1;
    for (std::size_t i = 0; i <= imax && cur.dim() > 0; ++i, pi *= p) {
        const u64 mod = pi * p;
        auto basis = cur.vectors();
        MatrixFp sys(p, d, basis.size());
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                Vec x = a.mul(basis[j], a.basis(b));
                u64 t = lifted_trace_power(a.left_mult(x), pi, mod);
                sys(b, j) = static_cast<u32>((t / pi) % p);
            }
        Subspace k = kernel(sys);
        std::vector<Vec> next;
        for (auto& c : k.vectors()) {
            Vec v(d, 0);
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (c[j]) v = vadd(v, vscale(basis[j], c[j], p), p);
            next.push_back(v);
        }
        cur = Subspace::span(p, d, next);
    }
    if (!is_ideal(a, cur) || nilpotency_index(a, cur) == 0)
        throw RadicalUnsupported("radical-unsupported: trace-form candidate is not a nilpotent ideal");
    return cur;
}

HH0 hh0(const Algebra& a) { return HH0{Quotient(Subspace::full(a.p(), a.dim()), commutator_subspace(a))}; }

MatrixFp xi_p_on_hh0(const Algebra& a, const HH0& h) {
    MatrixFp m(a.p(), h.dim(), h.dim());
    for (std::size_t j = 0; j < h.dim(); ++j) m.set_col(j, h.project(a.power(h.q.reps()[j], a.p())));
    return m;
}

MatrixFp xi_p_on_hh0(const Algebra& a) { return xi_p_on_hh0(a, hh0(a)); }

u32 form_value(const MatrixFp& g, const Vec& x, const Vec& y) {
    Vec gy = g.apply(y);
    u64 s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = (s + static_cast<u64>(x[i]) * gy[i]) % g.p;
    return static_cast<u32>(s);
}

std::optional<std::string> validate_symmetrizing_form(const Algebra& a, const MatrixFp& g) {
    const std::size_t d = a.dim();
    if (g.rows != d || g.cols != d) return "form has wrong shape";
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (g(i, j) != g(j, i)) return "not symmetric at (" + a.labels()[i] + "," + a.labels()[j] + ")";
    if (rank(g) != d) return "degenerate form";
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (form_value(g, a.product(i, j), a.basis(k)) != form_value(g, a.basis(i), a.product(j, k)))
                    return "not associative at (" + a.labels()[i] + "," + a.labels()[j] + "," + a.labels()[k] + ")";
    return std::nullopt;
}

}  // namespace kul
