#pragma once

#include "bispec/quasi.hpp"

#include <map>
#include <vector>

namespace bispec {

// Polynomial-coefficient differential operator in the log basis:
//   D = sum_i logCoeffs[i](x) * (x d/dx)^{order-i},  logCoeffs[0] != 0.
struct DiffOp {
  int order = 0;
  std::vector<Poly> logCoeffs;  // size order+1

  const Poly& coeffOfPower(int j) const { return logCoeffs[order - j]; }  // (x d/dx)^j
};

// Polynomial-coefficient difference operator:
//   D = sum_i coeffs[i](u) * tau^{order-i},  (tau f)(u) = f(u+1).
struct DiffeOp {
  int order = 0;
  std::vector<Poly> coeffs;  // size order+1, coeffs[0] != 0

  const Poly& coeffOfPower(int j) const { return coeffs[order - j]; }
};

DiffOp normalizeDiffOp(std::vector<Poly> logCoeffs);
DiffeOp normalizeDiffeOp(std::vector<Poly> coeffs);

// Bigraded constant table: D = sum A_{ij} x^i (x d/dx)^j  or  sum A_{ij} u^i tau^j.
struct BigradedTable {
  enum class Axis { XLog, UTau };
  Axis axis = Axis::XLog;
  std::map<std::pair<int, int>, Complex> entries;  // (i, j) -> coefficient
};

// Rewrite sum_k stdCoeffs[k](x) x^k d/dx^k into the log basis.
DiffOp stdToLog(const std::vector<Poly>& stdCoeffs);
// Inverse view: coefficients of sum_k A~_k(x) x^k d/dx^k.
std::vector<Poly> logToStd(const DiffOp& d);

BigradedTable bigradeExtract(const DiffOp& d);
BigradedTable bigradeExtract(const DiffeOp& d);
DiffOp regradeToDiff(const BigradedTable& t);
DiffeOp regradeToDiffe(const BigradedTable& t);

QuasiPolySumX applyDiff(const DiffOp& d, const QuasiRationalX& f);
QuasiRationalU applyDiffe(const DiffeOp& d, const QuasiRationalU& f);
ExpPolySum applyDiffe(const DiffeOp& d, const ExpPolySum& f);

DiffOp composeDiff(const DiffOp& a, const DiffOp& b);
DiffeOp composeDiffe(const DiffeOp& a, const DiffeOp& b);

// Differential operator with rational coefficients, sum coeffs[k] * d/dx^k
// (plain-derivative basis, lowest power first).
struct RatDiffOp {
  std::vector<RationalFn> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Difference operator with rational coefficients, sum coeffs[k] * tau^k.
struct RatDiffeOp {
  std::vector<RationalFn> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

RatDiffOp composeRat(const RatDiffOp& a, const RatDiffOp& b);
RatDiffeOp composeRat(const RatDiffeOp& a, const RatDiffeOp& b);

// (d/dx - r) and (tau - g) first-order factors; composeFirstOrderFactors
// multiplies them left to right as written.
RatDiffOp diffFactor(const RationalFn& r);
RatDiffeOp diffeFactor(const RationalFn& g);
RatDiffOp composeFirstOrderFactorsDiff(const std::vector<RationalFn>& rs);
RatDiffeOp composeFirstOrderFactorsDiffe(const std::vector<RationalFn>& gs);

QuasiPolySumX applyRat(const RatDiffOp& d, const QuasiRationalX& f);
QuasiRationalU applyRat(const RatDiffeOp& d, const QuasiRationalU& f);

// Formal conjugate sum (-d/dx)^k . coeffs[k](x) of a rational-coefficient
// differential operator.
RatDiffOp formalConjugate(const RatDiffOp& d);

// Multiply by `clear` on the left and require polynomial coefficients of the
// shape sum P_k(x) d/dx^k with x^k | P_k; converts to the log basis.
DiffOp clearToDiffOp(const Poly& clear, const RatDiffOp& d, double relTol,
                     const std::string& what);
// Same on the difference side.
DiffeOp clearToDiffeOp(const Poly& clear, const RatDiffeOp& d, double relTol,
                       const std::string& what);

// Relative annihilation residual of D applied to x^lambda p (resp. z^u q).
double annihilationResidual(const DiffOp& d, Complex lambda, const Poly& p);
double annihilationResidual(const DiffeOp& d, const BranchedBase& z, const Poly& q);

}  // namespace bispec
