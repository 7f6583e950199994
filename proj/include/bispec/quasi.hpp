#pragma once

#include "bispec/rational.hpp"

#include <vector>

namespace bispec {

// x^lambda * part(x)
struct QuasiRationalX {
  Complex exponent;
  RationalFn part;
};

// base^u * part(u)
struct QuasiRationalU {
  BranchedBase base;
  RationalFn part;
};

// Finite sum over delta-distinct exponents lambda of x^lambda * r(x).
class QuasiPolySumX {
 public:
  void add(Complex exponent, const RationalFn& part, double delta = kDelta);
  const std::vector<std::pair<Complex, RationalFn>>& terms() const { return terms_; }
  bool approxZero(double relTol) const;
  double residualNorm(double scale) const;

 private:
  std::vector<std::pair<Complex, RationalFn>> terms_;
};

// Finite sum over delta-distinct bases z of z^u * p(u).
class ExpPolySum {
 public:
  ExpPolySum() = default;
  ExpPolySum(const BranchedBase& b, const Poly& p) { add(b, p); }
  void add(const BranchedBase& base, const Poly& part, double delta = kDelta);
  const std::vector<std::pair<BranchedBase, Poly>>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  Complex evalAt(Complex u) const;

 private:
  std::vector<std::pair<BranchedBase, Poly>> terms_;
};

ExpPolySum operator+(const ExpPolySum& a, const ExpPolySum& b);
ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b);
ExpPolySum operator*(Complex s, const ExpPolySum& a);

// Shift u -> u+1 (each base contributes one factor of its value).
ExpPolySum tauShift(const ExpPolySum& a);

// Leibniz-expanded determinant; matrix size is capped at `bound`.
ExpPolySum expPolyDet(const std::vector<std::vector<ExpPolySum>>& m, int bound = 6);

}  // namespace bispec
