#pragma once

#include "bispec/types.hpp"

#include <vector>

namespace bispec {

// Column-ordered staircase elimination with row rescaling.  Pivot columns,
// read left to right, are the vanishing-order exponents of the row space.
struct Staircase {
  std::vector<int> pivots;     // strictly increasing
  std::vector<int> pivotRows;  // row index owning each pivot
  MatrixXcd reduced;           // eliminated and sup-normalized, rows in place
  MatrixXcd transform;         // transform * original = reduced
};

Staircase staircaseEliminate(const MatrixXcd& a, double rankTol = 1e-8);

// Orthonormal basis of the (right) nullspace, using singular values below
// relTol * sigma_max.
MatrixXcd nullspace(const MatrixXcd& a, double relTol = 1e-8);

int numericRank(const MatrixXcd& a, double relTol = 1e-8);

}  // namespace bispec
