#pragma once

#include "bispec/bispectral.hpp"

#include <cstdint>
#include <vector>

namespace bispec {

// Gaudin data (n, lambda, m, z); derived level sizes nbar_i = n_{i+1}+...+n_N.
struct GaudinProblem {
  std::vector<int> n;            // size N
  std::vector<Complex> lambda;   // size N, pairwise non-congruent mod 1
  std::vector<int> m;            // size M
  std::vector<BranchedBase> z;   // size M, distinct nonzero

  int bigN() const { return static_cast<int>(n.size()); }
  int bigM() const { return static_cast<int>(m.size()); }
  std::vector<int> levelSizes() const;  // nbar_1..nbar_{N-1}
  void validate() const;
};

// XXX data with the same shared lambda; the discrete Bethe equations use the
// quasi-exponential type lambda + 1 throughout.
struct XXXProblem {
  std::vector<int> m;
  std::vector<BranchedBase> z;
  std::vector<int> n;
  std::vector<Complex> lambda;  // shared (Gaudin-side) lambda

  int bigM() const { return static_cast<int>(m.size()); }
  int bigN() const { return static_cast<int>(n.size()); }
  std::vector<int> levelSizes() const;  // mbar_1..mbar_{M-1}
  bool separating() const;              // z separating w.r.t. the level sizes
  void validate() const;
};

// Variables flattened level by level.
struct LeveledPoint {
  std::vector<std::vector<Complex>> levels;
  int count() const;
  VectorXcd flat() const;
  static LeveledPoint fromFlat(const VectorXcd& v, const std::vector<int>& sizes);
};

struct BetheOrbit {
  std::vector<std::vector<Complex>> levels;  // canonical (sorted) roots per level
  std::vector<Poly> yTuple;                  // y_l = prod (x - t_j^{(l)})
  double residualNorm = 0.0;
  bool admissible = false;
};

struct SolveConfig {
  int restarts = 0;  // 0: use 200 * d
  std::uint64_t seed = 0;
  int maxIter = 60;
  double tolResidual = 1e-10;
};

// Master function and the Gaudin system
Complex masterFunctionLog(const LeveledPoint& t, const GaudinProblem& p);
// z_a d/dz_a of log Phi; the KZ eigenvalue at a critical point.
Complex masterLogZDerivative(const LeveledPoint& t, const GaudinProblem& p, int a);
VectorXcd gaudinResidual(const LeveledPoint& t, const GaudinProblem& p);
MatrixXcd gaudinJacobian(const LeveledPoint& t, const GaudinProblem& p);
bool gaudinAdmissible(const LeveledPoint& t, const GaudinProblem& p, double delta = kDelta);
std::vector<BetheOrbit> gaudinSolve(const GaudinProblem& p, const SolveConfig& cfg);

// XXX system on the denominator-cleared polynomial form
VectorXcd xxxResidual(const LeveledPoint& t, const XXXProblem& p);
MatrixXcd xxxJacobian(const LeveledPoint& t, const XXXProblem& p);
bool xxxAdmissible(const LeveledPoint& t, const XXXProblem& p, double delta = kDelta);
std::vector<BetheOrbit> xxxSolve(const XXXProblem& p, const SolveConfig& cfg);

// Tuple <-> operator constructions
RatDiffOp tupleToOperatorGaudin(const std::vector<Poly>& y, const GaudinProblem& p);
DiffOp specialOperatorFromTupleGaudin(const std::vector<Poly>& y, const GaudinProblem& p);
std::vector<Poly> spaceToTupleGaudin(const QuasiPolySpace& v);

RatDiffeOp tupleToOperatorXXX(const std::vector<Poly>& y, const XXXProblem& p);
std::vector<Poly> spaceToTupleXXX(const QuasiExpSpace& u);

// Space associated with a Gaudin orbit: groups x^{lambda_i} p_i.
QuasiPolySpace spaceFromGaudinOrbit(const BetheOrbit& orbit, const GaudinProblem& p);
// Bispectral-dual quasi-exponential space, type lambda + 1.
QuasiExpSpace dualSpaceFromGaudinOrbit(const BetheOrbit& orbit, const GaudinProblem& p);

// Gaudin orbit -> XXX orbit through the operator swap and kernel extraction.
BetheOrbit correspond(const BetheOrbit& gaudinOrbit, const GaudinProblem& p);

XXXProblem xxxFromGaudin(const GaudinProblem& p);

// Closed tridiagonal route for N = M = 2; one entry per eigenvector.
struct Tridiagonal22Result {
  Complex phi11;
  VectorXcd cWindow;  // c_alpha .. c_beta
  std::vector<Complex> cFull;  // c_0 .. c_{n_2}
  Poly p2;            // reconstructed, roots = Gaudin orbit
};
std::vector<Tridiagonal22Result> tridiagonal22(const GaudinProblem& p);

// Canonical form and matching of orbits.
std::vector<Complex> canonicalRoots(std::vector<Complex> roots);
bool sameOrbit(const BetheOrbit& a, const BetheOrbit& b, double delta = kDelta);

}  // namespace bispec
