#pragma once
// algebra-level Kulshammer and Reynolds ideals, fingerprints

#include <optional>
#include <string>
#include <vector>

#include "kul/algebra.hpp"

namespace kul {

// subspace of HH0 coordinates: ker xi_p^r
Subspace t_r(const Algebra& a, const HH0& h, const MatrixFp& xi, unsigned r);
Subspace t_r(const Algebra& a, unsigned r);

// subspaces below are in Lambda coordinates
Subspace k_r(const Algebra& a, unsigned r);
Subspace k_r_classical(const Algebra& a, const MatrixFp& gram, unsigned r);
Subspace reynolds(const Algebra& a, unsigned r_max);
Subspace reynolds_via_radical(const Algebra& a);

// {a in Z : a b in [A,A] for b in lift(T)} with T in HH0 coordinates
Subspace annihilator_in_center(const Algebra& a, const HH0& h, const Subspace& t);

unsigned default_r_max(const Algebra& a);

struct IdealChain {
    unsigned r_max = 0;
    Subspace z, commutators;
    std::vector<Subspace> t;  // r = 0..r_max+1, HH0 coordinates
    std::vector<Subspace> k;  // r = 0..r_max
    Subspace reynolds;
    unsigned r_star = 0;
    bool stabilized = false;
};
IdealChain ideal_chain(const Algebra& a, std::optional<unsigned> r_max = std::nullopt);

struct Fingerprint {
    u32 p = 0;
    std::vector<std::size_t> k_dims;  // dim Z, dim K_1..K_{r*}, dim R
    std::size_t hh0_dim = 0;
    std::vector<std::size_t> t_dims;  // extra: not a claimed invariant
    bool stabilized = true;
    nlohmann::json to_json() const;
};
Fingerprint fingerprint(const Algebra& a, std::optional<unsigned> r_max = std::nullopt);
// nullopt when equal, otherwise the first differing entry
std::optional<std::string> compare(const Fingerprint& a, const Fingerprint& b);

}  // namespace kul
