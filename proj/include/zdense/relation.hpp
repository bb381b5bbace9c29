#pragma once

#include "zdense/numeric.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace zdense {

struct MultiplicativeRelation {
    std::vector<long> exponents;      // first vector found (max-norm, then lexicographic)
    int torsion_order = 1;            // order of the root of unity it evaluates to
    std::vector<long> exact;          // torsion_order * exponents
};

/// Smallest integer vector n (ordered by max |n_i|, then lexicographically,
/// first nonzero entry positive) with |n_i| <= bound such that
/// prod_i values[s][i]^{n_i} is a root of unity of order <= max_torsion for
/// every sample s. Values are compared in log coordinates at tolerance `tol`.
/// Vectors accepted by `ignore` are skipped.
std::optional<MultiplicativeRelation> find_multiplicative_relation(
    const std::vector<std::vector<BigComplex>>& samples, long bound, const Real& tol,
    int max_torsion = 12,
    const std::function<bool(const std::vector<long>&)>& ignore = {});

/// All integer vectors with max |n_i| = k and first nonzero entry positive,
/// in lexicographic order.
std::vector<std::vector<long>> exponent_shell(std::size_t n, long k);

}  // namespace zdense
