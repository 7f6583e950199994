#include "bispec/rational.hpp"

#include <algorithm>
#include <cmath>

namespace bispec {

namespace {
double evalScale(const Poly& p, Complex x) {
  double s = 0.0, ax = std::abs(x), pw = 1.0;
  for (const Complex& c : p.coeffs()) {
    s += std::abs(c) * pw;
    pw *= ax;
  }
  return std::max(s, 1e-300);
}
}  // namespace

RationalFn::RationalFn(Poly num, Poly den, double delta) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.isZero()) throw Error("RationalFn: zero denominator");
  if (num_.isZero()) {
    den_ = Poly::one();
    return;
  }
  if (den_.degree() > 0) {
    for (const auto& [r, mult] : clusteredRoots(den_)) {
      for (int k = 0; k < mult; ++k) {
        if (den_.degree() == 0) break;
        if (std::abs(evalAt(num_, r)) > delta * evalScale(num_, r) ||
            std::abs(evalAt(den_, r)) > delta * evalScale(den_, r))
          break;
        num_ = deflate(num_, r);
        den_ = deflate(den_, r);
        if (num_.isZero()) {
          den_ = Poly::one();
          return;
        }
      }
    }
  }
  const Complex lead = den_.lead();
  den_ = monic(den_);
  num_ = (Complex(1.0) / lead) * num_;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (Complex(-1.0) * b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num() * b.num(), a.den() * b.den());
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.isZero()) throw Error("RationalFn: division by zero");
  return RationalFn(a.num() * b.den(), a.den() * b.num());
}

RationalFn operator*(Complex s, const RationalFn& a) {
  return RationalFn(s * a.num(), a.den());
}

RationalFn operator-(const RationalFn& a) { return Complex(-1.0) * a; }

Complex evalAt(const RationalFn& f, Complex x) { return evalAt(f.num(), x) / evalAt(f.den(), x); }

RationalFn derivative(const RationalFn& f) {
  return RationalFn(derivative(f.num()) * f.den() - f.num() * derivative(f.den()),
                    f.den() * f.den());
}

RationalFn shiftBy(const RationalFn& f, Complex c) {
  return RationalFn(shiftBy(f.num(), c), shiftBy(f.den(), c));
}

RationalFn logDerivative(Complex exponent, const RationalFn& part) {
  // (x^e * part)' / (x^e * part) = e/x + part'/part
  RationalFn ex(Poly::constant(exponent), Poly::var());
  return ex + derivative(part) / part;
}

std::vector<Complex> laurentExpand(const RationalFn& f, Complex center, int orderLow,
                                   int orderHigh) {
  if (f.isZero()) throw Error("laurentExpand: zero function");
  if (orderLow > orderHigh) throw Error("laurentExpand: empty order range");
  const int k = rootMultiplicity(f.den(), center);
  if (k > 0 && rootMultiplicity(f.num(), center) > 0) throw Error("laurentExpand: unreduced");
  Poly dtil = f.den();
  for (int j = 0; j < k; ++j) dtil = deflate(dtil, center);

  const Poly numS = shiftBy(f.num(), center);
  const Poly denS = shiftBy(dtil, center);
  const int terms = orderHigh + k + 1;
  std::vector<Complex> series(std::max(terms, 0), Complex(0.0));
  const Complex b0 = denS.coeff(0);
  for (int m = 0; m < terms; ++m) {
    Complex acc = numS.coeff(m);
    for (int j = 0; j < m; ++j) acc -= series[j] * denS.coeff(m - j);
    series[m] = acc / b0;
  }
  std::vector<Complex> out;
  out.reserve(orderHigh - orderLow + 1);
  for (int j = orderLow; j <= orderHigh; ++j) {
    const int idx = j + k;
    out.push_back(idx >= 0 && idx < terms ? series[idx] : Complex(0.0));
  }
  return out;
}

}  // namespace bispec
