#pragma once
// brute-force helpers shared by the test binaries

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kul/algebra.hpp"

namespace oracle {

using namespace kul;

inline Algebra fixture(const std::string& name) { return load_algebra(std::string(KUL_FIXTURE_DIR) + "/" + name + ".json"); }

// calls f on every vector of GF(p)^n
inline void for_each_vector(u32 p, std::size_t n, const std::function<void(const Vec&)>& f) {
    Vec v(n, 0);
    while (true) {
        f(v);
        std::size_t i = 0;
        while (i < n && ++v[i] == p) v[i++] = 0;
        if (i == n) break;
    }
}

inline Vec random_vec(std::mt19937_64& rng, u32 p, std::size_t n) {
    Vec v(n);
    for (auto& x : v) x = static_cast<u32>(rng() % p);
    return v;
}

inline bool is_nilpotent(const Algebra& a, const Vec& x) {
    Vec y = x;
    for (std::size_t k = 0; k <= a.dim(); ++k) {
        if (vzero(y)) return true;
        y = a.mul(y, x);
    }
    return vzero(y);
}

// [A,A] spanned by ab - ba over all pairs of elements
inline Subspace brute_commutators(const Algebra& a) {
    std::vector<Vec> gens;
    for_each_vector(a.p(), a.dim(), [&](const Vec& x) {
        for_each_vector(a.p(), a.dim(), [&](const Vec& y) { gens.push_back(vsub(a.mul(x, y), a.mul(y, x), a.p())); });
    });
    return Subspace::span(a.p(), a.dim(), gens);
}

inline bool is_central(const Algebra& a, const Vec& x) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.mul(x, a.basis(i)) != a.mul(a.basis(i), x)) return false;
    return true;
}

// {a central : a b in [A,A] for all b with b^(p^r) in [A,A]}, as the list of all its elements
inline std::vector<Vec> brute_k_r(const Algebra& a, unsigned r) {
    Subspace comm = brute_commutators(a);
    unsigned long long e = 1;
    for (unsigned i = 0; i < r; ++i) e *= a.p();
    std::vector<Vec> tb;
    for_each_vector(a.p(), a.dim(), [&](const Vec& b) {
        if (contains(comm, a.power(b, e))) tb.push_back(b);
    });
    std::vector<Vec> out;
    for_each_vector(a.p(), a.dim(), [&](const Vec& x) {
        if (!is_central(a, x)) return;
        for (auto& b : tb)
            if (!contains(comm, a.mul(x, b))) return;
        out.push_back(x);
    });
    return out;
}

// a subspace equals a brute-force element set iff it contains every element and has the right size
inline bool same_set(const Subspace& s, const std::vector<Vec>& elems) {
    unsigned long long size = 1;
    for (std::size_t i = 0; i < s.dim(); ++i) size *= s.p();
    if (size != elems.size()) return false;
    for (auto& v : elems)
        if (!contains(s, v)) return false;
    return true;
}

}  // namespace oracle
