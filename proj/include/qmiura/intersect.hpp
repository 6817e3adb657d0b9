#pragma once

#include <array>
#include <map>
#include <vector>

#include "qmiura/partition.hpp"
#include "qmiura/rational.hpp"

namespace qmiura {

// 2x2 matrix of truncated Laurent series in z: exponent -> coefficient,
// exponents kept in [-order, +order].
struct MatLaurent {
    int order = 0;
    std::array<std::array<std::map<int, Rat>, 2>, 2> e;

    Rat at(int i, int j, int exponent) const;
};

MatLaurent mat_mul(const MatLaurent& a, const MatLaurent& b);

// The 2x2 series matrix R(z) driving the n-point residue formula,
// truncated at z^{-order}.
MatLaurent r_matrix(int order);

// Genus of a tau key (indices k_1..k_n), or -1 when the dimension
// constraint sum k_i = 3g-3+n has no admissible solution.
int tau_genus(const std::vector<int>& key);

// <tau_{k_1} ... tau_{k_n}> by the Virasoro/string/dilaton recursion,
// seeded by <tau_0^3> = 1 and <tau_1> = 1/24.  Returns 0 for keys that
// violate the dimension constraint or stability.
Rat tau_oracle(std::vector<int> key);

// One-point closed form <tau_{3g-2}> = 1/(24^g g!), g >= 1.
Rat tau_onepoint(int g);

// <tau_{lambda+1}> via the multi-point residue formula (closed form when
// lambda has a single part).  Requires all parts >= 1 and weight divisible
// by 3, or a single part equal to 3g-3.
Rat tau_bdy(const Partition& la);

} // namespace qmiura
