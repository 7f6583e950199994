#pragma once

#include "bispec/types.hpp"

#include <initializer_list>
#include <vector>

namespace bispec {

// Dense univariate polynomial over C, coefficients lowest degree first.
// Normalization drops trailing coefficients below eps * max|coeff|.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Complex> cs) : c_(cs) { trim(); }
  explicit Poly(std::vector<Complex> cs) : c_(std::move(cs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly({Complex(1.0)}); }
  static Poly var() { return Poly({Complex(0.0), Complex(1.0)}); }
  static Poly constant(Complex c) { return Poly({c}); }
  static Poly monomial(int k, Complex c = Complex(1.0));
  static Poly fromRoots(const std::vector<Complex>& roots, Complex lead = Complex(1.0));

  bool isZero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Complex(0.0);
  }
  Complex lead() const { return c_.empty() ? Complex(0.0) : c_.back(); }
  double maxAbsCoeff() const;

  Poly& trim(double eps = kEps);

 private:
  std::vector<Complex> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Complex s, const Poly& a);
Poly operator-(const Poly& a);

Complex evalAt(const Poly& p, Complex x);
Poly derivative(const Poly& p);
Poly shiftByOne(const Poly& p);            // p(u) -> p(u+1)
Poly shiftBy(const Poly& p, Complex c);    // p(u) -> p(u+c)
Poly monic(const Poly& p);
Poly theta(const Poly& p);                 // x * d/dx

// Falling-factorial product s(s-1)...(s-k+1) as a Poly in the symbol s.
Poly fallingFactorialProduct(int k);

// Degree-k polynomial binom(u + offset, k) = prod_{l<k}(u + offset - l) / k!.
Poly binomialPoly(int k, Complex offset = Complex(0.0));

// Long division: a = q * b + r with deg r < deg b.
struct PolyDivResult {
  Poly quotient;
  Poly remainder;
};
PolyDivResult polyDivide(const Poly& a, const Poly& b);

// Division that must be exact; throws `what` if the remainder is significant.
Poly polyDivideExact(const Poly& a, const Poly& b, double relTol, const std::string& what);

// Roots of the monic normalization via companion-matrix eigenvalues,
// polished by a few Newton steps.  Multiset of size deg(p).
std::vector<Complex> polyRoots(const Poly& p);

// Synthetic division by (x - r); remainder discarded.
Poly deflate(const Poly& p, Complex r);

// Roots grouped into clusters of the given relative radius; cluster means are
// polished with multiplicity-aware Newton steps.  Multiple roots come out far
// more accurate than the raw eigenvalues, whose splitting for an m-fold root
// scales like eps^(1/m).
std::vector<std::pair<Complex, int>> clusteredRoots(const Poly& p, double radius = 5e-3);

// Multiplicity of r as a root of p, counted by repeated deflation with a
// relative evaluation test.
int rootMultiplicity(const Poly& p, Complex r, double relTol = 1e-7);

// Monic greatest common divisor of a family, via delta-matched roots with
// minimal multiplicities.
Poly commonMonicDivisor(const std::vector<Poly>& ps, double delta = kDelta);

bool polyApproxEq(const Poly& a, const Poly& b, double tol);

// Relative size of p against a scale (max |coeff| of the reference).
double polyResidualNorm(const Poly& p, double scale);

double binomial(int n, int k);
double factorial(int n);

}  // namespace bispec
