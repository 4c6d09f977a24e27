#include "kul/kulshammer.hpp"

namespace kul {

Subspace t_r(const Algebra&, const HH0& h, const MatrixFp& xi, unsigned r) {
    if (r == 0) return Subspace::zero(xi.p, h.dim());
    return kernel(mat_pow(xi, r));
}

Subspace t_r(const Algebra& a, unsigned r) {
    HH0 h = hh0(a);
    return t_r(a, h, xi_p_on_hh0(a, h), r);
}

static Vec combine(const std::vector<Vec>& basis, const Vec& coeff, u32 p, std::size_t n) {
    Vec v(n, 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (coeff[i]) v = vadd(v, vscale(basis[i], coeff[i], p), p);
    return v;
}

Subspace annihilator_in_center(const Algebra& a, const HH0& h, const Subspace& t) {
    const u32 p = a.p();
    auto zb = center(a).vectors();
    std::vector<Vec> lifts;
    for (auto& c : t.vectors()) lifts.push_back(h.lift(c));
    // rows: (lifted b, HH0 coordinate); cols: center basis
    MatrixFp sys(p, lifts.size() * h.dim(), zb.size());
    for (std::size_t i = 0; i < zb.size(); ++i)
        for (std::size_t j = 0; j < lifts.size(); ++j) {
            Vec c = h.project(a.mul(zb[i], lifts[j]));
            for (std::size_t k = 0; k < h.dim(); ++k) sys(j * h.dim() + k, i) = c[k];
        }
    std::vector<Vec> out;
    for (auto& s : kernel(sys).vectors()) out.push_back(combine(zb, s, p, a.dim()));
    return Subspace::span(p, a.dim(), out);
}

Subspace k_r(const Algebra& a, unsigned r) {
    HH0 h = hh0(a);
    return annihilator_in_center(a, h, t_r(a, h, xi_p_on_hh0(a, h), r));
}

Subspace k_r_classical(const Algebra& a, const MatrixFp& gram, unsigned r) {
    if (auto bad = validate_symmetrizing_form(a, gram)) throw AlgebraError("invalid form: " + *bad);
    HH0 h = hh0(a);
    Subspace pre = preimage(h.q.projection(), t_r(a, h, xi_p_on_hh0(a, h), r));
    // a with (b,a) = 0 for every b in the preimage
    return kernel(pre.basis() * gram);
}

Subspace reynolds(const Algebra& a, unsigned r_max) {
    HH0 h = hh0(a);
    MatrixFp xi = xi_p_on_hh0(a, h);
    Subspace r = center(a);
    for (unsigned k = 1; k <= r_max; ++k) r = intersect(r, annihilator_in_center(a, h, t_r(a, h, xi, k)));
    return r;
}

Subspace reynolds_via_radical(const Algebra& a) {
    const u32 p = a.p();
    HH0 h = hh0(a);
    auto zb = center(a).vectors();
    auto jb = radical(a).vectors();
    MatrixFp sys(p, jb.size() * h.dim(), zb.size());
    for (std::size_t i = 0; i < zb.size(); ++i)
        for (std::size_t j = 0; j < jb.size(); ++j) {
            Vec c = h.project(a.mul(zb[i], jb[j]));
            for (std::size_t k = 0; k < h.dim(); ++k) sys(j * h.dim() + k, i) = c[k];
        }
    std::vector<Vec> out;
    for (auto& s : kernel(sys).vectors()) out.push_back(combine(zb, s, p, a.dim()));
    return Subspace::span(p, a.dim(), out);
}

unsigned default_r_max(const Algebra& a) {
    unsigned c = 0;
    for (u64 q = 1; q < a.dim(); q *= a.p()) ++c;
    return 1 + c;
}

IdealChain ideal_chain(const Algebra& a, std::optional<unsigned> r_max) {
    IdealChain ch;
    ch.r_max = r_max.value_or(default_r_max(a));
    HH0 h = hh0(a);
    MatrixFp xi = xi_p_on_hh0(a, h);
    ch.z = center(a);
    ch.commutators = h.q.small();
    for (unsigned r = 0; r <= ch.r_max + 1; ++r) ch.t.push_back(t_r(a, h, xi, r));
    for (unsigned r = 0; r <= ch.r_max; ++r)
        ch.k.push_back(r == 0 ? ch.z : annihilator_in_center(a, h, ch.t[r]));
    ch.reynolds = ch.z;
    for (auto& k : ch.k) ch.reynolds = intersect(ch.reynolds, k);
    ch.r_star = ch.r_max;
    for (unsigned r = 1; r <= ch.r_max; ++r)
        if (ch.t[r] == ch.t[r + 1]) {
            ch.r_star = r;
            ch.stabilized = true;
            break;
        }
    return ch;
}

nlohmann::json Fingerprint::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["k_dims"] = k_dims;
    j["hh0_dim"] = hh0_dim;
    j["extra_t_dims"] = t_dims;
    j["stabilized"] = stabilized;
    return j;
}

Fingerprint fingerprint(const Algebra& a, std::optional<unsigned> r_max) {
    IdealChain ch = ideal_chain(a, r_max);
    Fingerprint f;
    f.p = a.p();
    f.k_dims.push_back(ch.z.dim());
    for (unsigned r = 1; r <= ch.r_star; ++r) f.k_dims.push_back(ch.k[r].dim());
    f.k_dims.push_back(ch.reynolds.dim());
    f.hh0_dim = ch.t[0].ambient();
    for (unsigned r = 1; r <= ch.r_star; ++r) f.t_dims.push_back(ch.t[r].dim());
    f.stabilized = ch.stabilized;
    return f;
}

std::optional<std::string> compare(const Fingerprint& a, const Fingerprint& b) {
    auto diff = [](const std::string& what, std::size_t x, std::size_t y) {
        return what + ": " + std::to_string(x) + " vs " + std::to_string(y);
    };
    if (a.p != b.p) return diff("p", a.p, b.p);
    std::size_t n = std::min(a.k_dims.size(), b.k_dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.k_dims[i] == b.k_dims[i]) continue;
        std::string name = i == 0 ? "dim Z" : i + 1 == a.k_dims.size() ? "dim R" : "dim K_" + std::to_string(i);
        return diff(name, a.k_dims[i], b.k_dims[i]);
    }
    if (a.k_dims.size() != b.k_dims.size()) return diff("chain length", a.k_dims.size(), b.k_dims.size());
    if (a.hh0_dim != b.hh0_dim) return diff("dim HH0", a.hh0_dim, b.hh0_dim);
    for (std::size_t i = 0; i < std::min(a.t_dims.size(), b.t_dims.size()); ++i)
        if (a.t_dims[i] != b.t_dims[i]) return diff("dim T_" + std::to_string(i + 1) + " (extra)", a.t_dims[i], b.t_dims[i]);
    if (a.stabilized != b.stabilized) return std::string("stabilization flag differs");
    return std::nullopt;
}

}  // namespace kul
