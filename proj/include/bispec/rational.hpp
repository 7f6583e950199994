#pragma once

#include "bispec/poly.hpp"

namespace bispec {

// Rational function num/den, stored with monic denominator and no common
// root within the matching tolerance.
class RationalFn {
 public:
  RationalFn() : num_(Poly::zero()), den_(Poly::one()) {}
  RationalFn(Poly num, Poly den, double delta = kDelta);
  static RationalFn fromPoly(Poly p) { return RationalFn(std::move(p), Poly::one()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }
  bool isPoly() const { return den_.degree() == 0; }
  Poly asPoly(double relTol, const std::string& what) const {
    return polyDivideExact(num_, den_, relTol, what);
  }

 private:
  Poly num_;
  Poly den_;
};

RationalFn operator+(const RationalFn& a, const RationalFn& b);
RationalFn operator-(const RationalFn& a, const RationalFn& b);
RationalFn operator*(const RationalFn& a, const RationalFn& b);
RationalFn operator/(const RationalFn& a, const RationalFn& b);
RationalFn operator*(Complex s, const RationalFn& a);
RationalFn operator-(const RationalFn& a);

Complex evalAt(const RationalFn& f, Complex x);
RationalFn derivative(const RationalFn& f);
RationalFn shiftBy(const RationalFn& f, Complex c);

// Logarithmic derivative of c/x-type quasi factors:  (x^e * p/q)' / (x^e * p/q).
RationalFn logDerivative(Complex exponent, const RationalFn& part);

// Laurent coefficients g_j of f around `center` for j in [orderLow, orderHigh].
// The pole order is read off the multiplicity of `center` in the denominator.
std::vector<Complex> laurentExpand(const RationalFn& f, Complex center, int orderLow,
                                   int orderHigh);

}  // namespace bispec
