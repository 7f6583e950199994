#pragma once

#include "bispec/bethe.hpp"

#include <string>
#include <vector>

namespace bispec {

// Tensor product of symmetric powers of C^rank, restricted to one weight.
// States are factor-exponent matrices K (numFactors x rank) with fixed row
// sums (factor weights) and column sums (the weight), flattened row-major and
// ordered lexicographically.
struct WeightBlock {
  int rank = 0;
  std::vector<int> factorWeights;
  std::vector<int> weight;
  std::vector<std::vector<int>> states;

  int dim() const { return static_cast<int>(states.size()); }
  int numFactors() const { return static_cast<int>(factorWeights.size()); }
  int indexOf(const std::vector<int>& state) const;
  int entry(int stateIdx, int factor, int col) const {
    return states[stateIdx][factor * rank + col];
  }
};

WeightBlock makeWeightBlock(int rank, const std::vector<int>& factorWeights,
                            const std::vector<int>& weight);

std::vector<int> shiftWeight(const std::vector<int>& w, int i, int j);  // w + e_i - e_j

// Total E_ij (sum over factors) from the block of `from`-weight into the
// block of weight + e_i - e_j.  Indices are 0-based.
MatrixXcd generatorTotal(const WeightBlock& from, const WeightBlock& to, int i, int j);

// B_{ij}(t) = 1 + sum_s (E_ji)^s (E_ij)^s prod_{l<=s} 1/(l (t - E_ii + E_jj - l)).
// `literalJ` switches the leading l to the printed factor j+1 (1-based j).
MatrixXcd bSeries(const WeightBlock& block, int i, int j, Complex t, bool literalJ = false);

// Hamiltonian families (all 0-based in a / i).
MatrixXcd gaudinKZ(const WeightBlock& block, int a, const std::vector<Complex>& lambda,
                   const std::vector<Complex>& z, bool sameFactorEii = false);
MatrixXcd gaudinDynamical(const WeightBlock& block, int i, const std::vector<Complex>& lambda,
                          const std::vector<Complex>& z);
MatrixXcd xxxKZ(const WeightBlock& block, int i, const std::vector<Complex>& z,
                const std::vector<Complex>& lambda);
MatrixXcd xxxDynamical(const WeightBlock& block, int a, const std::vector<Complex>& z,
                       const std::vector<Complex>& lambda);

// Rational R-matrix on L_p tensor L_q of gl_rank, solved from invariance,
// the intertwining relations and the highest-vector normalization.
MatrixXcd rMatrix(int rank, int p, int q, Complex t);

// Transpose identification between the (m, n) and (n, m) blocks.
MatrixXcd dualityMap(const WeightBlock& from, const WeightBlock& to);

struct DualityReport {
  std::vector<double> kzNorms;   // |H^G_a - dual G^X_a| per a
  std::vector<double> dynNorms;  // |G^G_i - dual H^X_i| per i
  double maxNorm = 0.0;
};
DualityReport dualityCheck(const std::vector<int>& m, const std::vector<int>& n,
                           const std::vector<Complex>& lambda, const std::vector<Complex>& z);

// N = M = 2 universal rational functions on the divided-power bases.
VectorXcd omegaGaudin(const std::vector<Complex>& ts, const WeightBlock& block,
                      const std::vector<Complex>& z);
VectorXcd omegaXXX(const std::vector<Complex>& ts, const WeightBlock& block,
                   const std::vector<Complex>& lambdaH, const std::vector<int>& n);

// Weyl map s on the XXX side and the b(lambda) map on the Gaudin side (2x2).
MatrixXcd weylMapXXX(const WeightBlock& from, const WeightBlock& to);
MatrixXcd bMapGaudin(const WeightBlock& from, const WeightBlock& to,
                     const std::vector<Complex>& lambda);

struct EigencheckEntry {
  std::string hamiltonian;
  Complex eigenvalue;
  double residual;
};
std::vector<EigencheckEntry> eigencheckGaudin(const BetheOrbit& orbit, const GaudinProblem& p);
std::vector<EigencheckEntry> eigencheckXXX(const BetheOrbit& xxxOrbit, const GaudinProblem& p);

struct ConjectureReport {
  double proportionalityResidual;
  Complex kappa;
};
ConjectureReport conjectureCheck(const BetheOrbit& gaudinOrbit, const GaudinProblem& p);

// Expansion helpers for the 2x2 coefficient identities.
VectorXcd expandInGaudinBasis(const Poly& p, int deg, Complex z1, Complex z2);
VectorXcd expandInXXXBasis(const Poly& q, int deg, Complex lam1, Complex lam2, int n1, int n2);

double commutatorNorm(const MatrixXcd& a, const MatrixXcd& b);

}  // namespace bispec
