#pragma once

#include "bispec/linalg.hpp"
#include "bispec/operators.hpp"

#include <optional>
#include <vector>

namespace bispec {

// ---------------------------------------------------------------------------
// Spaces

struct QuasiPolyGroup {
  Complex lambda;
  std::vector<Poly> polys;  // strictly increasing degrees within the group
};

struct QuasiPolySpace {
  std::vector<QuasiPolyGroup> groups;
  int dim() const;
  std::vector<std::pair<Complex, Poly>> basis() const;
};

struct QuasiExpGroup {
  BranchedBase base;
  std::vector<Poly> polys;
};

struct QuasiExpSpace {
  std::vector<QuasiExpGroup> groups;
  int dim() const;
  std::vector<std::pair<BranchedBase, Poly>> basis() const;
};

// The shared data tuple of a dual pair of spaces.
struct XGroupData {
  Complex lambda;
  std::vector<int> degrees;  // n_i1 < n_i2 < ...
};
struct UGroupData {
  BranchedBase base;
  std::vector<int> degrees;  // m_a1 < m_a2 < ...
};
struct SpaceData {
  std::vector<XGroupData> x;
  std::vector<UGroupData> u;

  int bigN() const;
  int bigM() const;
  int xWeight() const;  // sum (n_ij + 1 - j)
  int uWeight() const;  // sum (m_ab + 1 - b)
  bool degreeBalance() const { return xWeight() == uWeight(); }
};

// ---------------------------------------------------------------------------
// Wronskians.  A Wronskian of quasi-polynomials collapses to a single
// x^e * S(x); the discrete Wronskian of quasi-exponentials to base^u * S(u).

struct QuasiWronskianX {
  Complex exponent;
  Poly part;
};
struct QuasiWronskianU {
  BranchedBase base;
  Poly part;
};

QuasiWronskianX wronskianX(const std::vector<std::pair<Complex, Poly>>& fs);
QuasiWronskianU discreteWronskianU(const std::vector<std::pair<BranchedBase, Poly>>& fs);

// Minor skipping derivative order (N - i)  (resp. shift (M - i)).
QuasiWronskianX wronskianMinorX(const std::vector<std::pair<Complex, Poly>>& fs, int i);
QuasiWronskianU discreteWronskianMinorU(const std::vector<std::pair<BranchedBase, Poly>>& fs,
                                        int i);

// ---------------------------------------------------------------------------
// Exponents

std::vector<int> exponentsAt(const QuasiPolySpace& v, Complex z, double rankTol = 1e-8);

struct SingularPointX {
  Complex z;
  std::vector<int> exponents;
  std::vector<int> mab;  // parsed m_a1 < ... < m_aMa
};
std::vector<SingularPointX> singularPoints(const QuasiPolySpace& v, double delta = kDelta);

struct DiscreteExponents {
  std::vector<int> exponents;        // c_1 < ... < c_M
  std::vector<Poly> frameTypePolys;  // Q_1..Q_M
  MatrixXcd combination;             // combination * basis agrees with exponents
  std::vector<int> pivotRows;
};
DiscreteExponents discreteExponentsAt(const QuasiExpSpace& u, Complex lambda,
                                      double rankTol = 1e-8);

// ---------------------------------------------------------------------------
// Frame

struct Frame {
  std::vector<Poly> polys;  // P_1..P_M, monic
};
Frame frame(const QuasiExpSpace& u, double delta = kDelta);

// ---------------------------------------------------------------------------
// Fundamental operators

// d/dx^N + sum_i Abar_i d/dx^{N-i}, rational coefficients (stored ascending).
RatDiffOp monicFundamentalDiffOp(const QuasiPolySpace& v);
RatDiffeOp monicFundamentalDiffeOp(const QuasiExpSpace& u);

DiffOp regularizedFundamentalDiffOp(const QuasiPolySpace& v);
// Independent route: linear solve for bounded-degree log-basis coefficients.
DiffOp regularizedFundamentalDiffOpDirect(const QuasiPolySpace& v);
DiffOp specialFundamentalDiffOp(const QuasiPolySpace& v, const std::vector<Complex>& zs);

struct RegularizedDiffeOp {
  DiffeOp op;
  bool nondegenerate;             // deg B_0 == N
  std::vector<XGroupData> xdata;  // parsed from the lambda candidates
};
RegularizedDiffeOp regularizedFundamentalDiffeOp(const QuasiExpSpace& u,
                                                 const std::vector<Complex>& lambdaCandidates);
DiffeOp specialFundamentalDiffeOp(const QuasiExpSpace& u, const std::vector<Complex>& lambdas,
                                  const std::vector<int>& ns);

// ---------------------------------------------------------------------------
// Conjugate spaces

enum class ConjX { Star, Dagger };
std::vector<QuasiRationalX> conjugateSpace(const QuasiPolySpace& v, ConjX kind);

enum class ConjU { DDagger, Bullet };
// DDagger divides by the last coefficient of the regularized operator,
// Bullet by the last coefficient of the special operator.
std::vector<QuasiRationalU> conjugateSpaceU(const QuasiExpSpace& u, ConjU kind,
                                            const std::vector<Complex>& lambdas,
                                            const std::vector<int>& ns = {});

// ---------------------------------------------------------------------------
// Data extraction and verdicts

SpaceData dataOf(const QuasiPolySpace& v);
SpaceData dataOf(const QuasiExpSpace& u, const std::vector<Complex>& lambdaCandidates);

struct SpaceChecks {
  bool degreeBalance = false;
  bool nondegenerate = false;
  bool numericallyNondegenerate = false;
  std::string witness;
};
SpaceChecks checks(const QuasiPolySpace& v);
SpaceChecks checksU(const QuasiExpSpace& u, const std::vector<Complex>& lambdaCandidates);

// Exponent pattern {0..N-2, N-1+m_a} at every listed z; throws "not special"
// if the list misses a singular point or a pattern does not match.
std::vector<int> specialExponents(const QuasiPolySpace& v, const std::vector<Complex>& zs);
std::vector<int> specialDiscreteExponents(const QuasiExpSpace& u,
                                          const std::vector<Complex>& lambdas);

// ---------------------------------------------------------------------------
// Kernels with quasi-function ansatz

std::vector<Poly> quasiPolyKernel(const DiffOp& d, Complex lambda, int degreeBound,
                                  double relTol = 1e-8);
std::vector<Poly> quasiExpKernel(const DiffeOp& d, const BranchedBase& z, int degreeBound,
                                 double relTol = 1e-8);

}  // namespace bispec
