#pragma once

#include "bispec/types.hpp"

#include <cstdint>
#include <vector>

namespace bispec {

// Number of nonnegative integer matrices with row sums m and column sums n;
// equals dim (L_{m_1} x ... x L_{m_M})[n].
std::int64_t weightDim(const std::vector<int>& m, const std::vector<int>& n);

// Closed 2x2 count: #{ i : max(0, n_2-m_1) <= i <= min(m_2, n_2) }.
std::int64_t dFormula22(const std::vector<int>& n, const std::vector<int>& m);

// Brute-force enumeration, used as the oracle for weightDim.
std::int64_t weightDimBruteForce(const std::vector<int>& m, const std::vector<int>& n);

}  // namespace bispec
