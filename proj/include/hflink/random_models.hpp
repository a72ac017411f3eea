#pragma once

// Randomized model generators used by the validation and property suites:
// homogeneous unipotent base changes (which must leave every homological
// output unchanged) and random staircase exponent data.

#include <random>

#include "hflink/invariants.hpp"

namespace hflink {

// Conjugates the differential by I + N with N strictly lower triangular in
// generator order and homogeneous of bidegree (0,0).  Entries of N are forced
// monomials: N[i][j] can only be u^a v^b with (-2a,-2b) = grading(x_j) - grading(x_i).
inline Complex random_base_change(const Complex& c, std::mt19937_64& rng) {
    std::size_t n = c.size();
    EntryMap nmat;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Bigrading need = c.gens()[j].grading - c.gens()[i].grading;  // = (-2a,-2b)
            if (need.w > 0 || need.z > 0 || need.w % 2 || need.z % 2) continue;
            if (!coin(rng)) continue;
            nmat[{(int)i, (int)j}] = Poly(Monomial{(unsigned)(-need.w / 2), (unsigned)(-need.z / 2)});
        }
    EntryMap id;
    for (std::size_t i = 0; i < n; ++i) id[{(int)i, (int)i}] = Poly::one();
    EntryMap b = add_entries(id, nmat);
    // (I + N)^-1 = I + N + N^2 + ... (N is nilpotent)
    EntryMap binv = id;
    EntryMap pw = nmat;
    while (!pw.empty()) {
        binv = add_entries(binv, pw);
        pw = compose_entries(pw, nmat);
    }
    EntryMap dnew = compose_entries(binv, compose_entries(c.diff(), b));
    Complex out(c.name() + "~", std::vector<Generator>(c.gens()));
    out.set_basepoint_pairs(c.basepoint_pairs());
    for (const auto& [key, poly] : dnew) out.add_diff(key.first, key.second, poly);
    return out;
}

// Random antisymmetric strictly decreasing exponent sequence of length 2n+1.
inline std::vector<long long> random_staircase_exponents(std::mt19937_64& rng, int max_n = 4,
                                                         int max_gap = 3) {
    std::uniform_int_distribution<int> nd(0, max_n), gap(1, max_gap);
    int n = nd(rng);
    std::vector<long long> half(n + 1, 0);  // a_n = 0 in the middle
    for (int i = n - 1; i >= 0; --i) half[i] = half[i + 1] + gap(rng);
    std::vector<long long> a(half.begin(), half.end());
    for (int i = n - 1; i >= 0; --i) a.push_back(-half[i]);
    return a;
}

} // namespace hflink
