#include "bispec/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace bispec {

Poly Poly::monomial(int k, Complex c) {
  std::vector<Complex> cs(k + 1, Complex(0.0));
  cs[k] = c;
  return Poly(std::move(cs));
}

Poly Poly::fromRoots(const std::vector<Complex>& roots, Complex lead) {
  Poly p = Poly::constant(lead);
  for (Complex r : roots) p = p * Poly({-r, Complex(1.0)});
  return p;
}

double Poly::maxAbsCoeff() const {
  double m = 0.0;
  for (const Complex& v : c_) m = std::max(m, std::abs(v));
  return m;
}

Poly& Poly::trim(double eps) {
  double m = maxAbsCoeff();
  if (m == 0.0) {
    c_.clear();
    return *this;
  }
  const double cut = eps * m;
  for (Complex& v : c_)
    if (std::abs(v) <= cut) v = Complex(0.0);
  while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
  return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Complex> c(std::max(a.coeffs().size(), b.coeffs().size()), Complex(0.0));
  for (size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
  for (size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (Complex(-1.0) * b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return Poly::zero();
  std::vector<Complex> c(a.coeffs().size() + b.coeffs().size() - 1, Complex(0.0));
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    for (size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return Poly(std::move(c));
}

Poly operator*(Complex s, const Poly& a) {
  std::vector<Complex> c = a.coeffs();
  for (Complex& v : c) v *= s;
  return Poly(std::move(c));
}

Poly operator-(const Poly& a) { return Complex(-1.0) * a; }

Complex evalAt(const Poly& p, Complex x) {
  Complex acc(0.0);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.degree() < 1) return Poly::zero();
  std::vector<Complex> c(p.coeffs().size() - 1);
  for (size_t i = 1; i < p.coeffs().size(); ++i) c[i - 1] = double(i) * p.coeffs()[i];
  return Poly(std::move(c));
}

Poly shiftByOne(const Poly& p) { return shiftBy(p, Complex(1.0)); }

Poly shiftBy(const Poly& p, Complex c) {
  if (p.isZero()) return p;
  // Repeated synthetic Horner shift.
  std::vector<Complex> a = p.coeffs();
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n - 1; ++i)
    for (int j = n - 2; j >= i; --j) a[j] += c * a[j + 1];
  return Poly(std::move(a));
}

Poly monic(const Poly& p) {
  if (p.isZero()) return p;
  return (Complex(1.0) / p.lead()) * p;
}

Poly theta(const Poly& p) {
  std::vector<Complex> c = p.coeffs();
  for (size_t i = 0; i < c.size(); ++i) c[i] *= double(i);
  return Poly(std::move(c));
}

Poly fallingFactorialProduct(int k) {
  Poly p = Poly::one();
  for (int j = 0; j < k; ++j) p = p * Poly({Complex(-double(j)), Complex(1.0)});
  return p;
}

Poly binomialPoly(int k, Complex offset) {
  Poly p = Poly::one();
  for (int l = 0; l < k; ++l) p = p * Poly({offset - double(l), Complex(1.0)});
  return (Complex(1.0 / factorial(k))) * p;
}

PolyDivResult polyDivide(const Poly& a, const Poly& b) {
  if (b.isZero()) throw Error("polyDivide: division by zero polynomial");
  std::vector<Complex> r = a.coeffs();
  const int db = b.degree();
  const Complex lead = b.lead();
  std::vector<Complex> q;
  if (a.degree() >= db) q.assign(a.degree() - db + 1, Complex(0.0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const Complex f = r[k + db] / lead;
    q[k] = f;
    for (int j = 0; j <= db; ++j) r[k + j] -= f * b.coeff(j);
  }
  if (static_cast<int>(r.size()) > db) r.resize(db > 0 ? db : 0);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly polyDivideExact(const Poly& a, const Poly& b, double relTol, const std::string& what) {
  auto [q, r] = polyDivide(a, b);
  const double scale = std::max(a.maxAbsCoeff(), q.maxAbsCoeff() * b.maxAbsCoeff());
  if (r.maxAbsCoeff() > relTol * std::max(scale, 1e-300)) throw Error(what);
  return q;
}

std::vector<Complex> polyRoots(const Poly& p) {
  if (p.degree() < 1) throw Error("polyRoots: undefined roots");
  const Poly m = monic(p);
  const int n = m.degree();
  MatrixXcd companion = MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Complex(1.0);
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -m.coeff(i);
  Eigen::ComplexEigenSolver<MatrixXcd> es(companion, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  const Poly d = derivative(m);
  for (Complex& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const Complex fv = evalAt(m, r);
      const Complex dv = evalAt(d, r);
      if (std::abs(dv) < 1e-14 * std::max(1.0, std::abs(fv))) break;
      const Complex step = fv / dv;
      if (!(std::abs(step) < 1e-3 * std::max(1.0, std::abs(r)))) break;  // only polish
      r -= step;
    }
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

Poly deflate(const Poly& p, Complex r) {
  if (p.degree() < 1) return Poly::zero();
  const int n = p.degree();
  std::vector<Complex> q(n);
  Complex carry = p.coeff(n);
  for (int k = n - 1; k >= 0; --k) {
    q[k] = carry;
    carry = p.coeff(k) + r * carry;
  }
  return Poly(std::move(q));
}

std::vector<std::pair<Complex, int>> clusteredRoots(const Poly& p, double radius) {
  // The cluster mean beats any polish for m-fold roots: the eigenvalue
  // perturbations are the m-th roots of the coefficient noise and cancel
  // pairwise, while forward evaluation near the root is all roundoff.
  std::vector<std::pair<Complex, int>> out;
  if (p.degree() < 1) return out;
  const auto roots = polyRoots(p);
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex center = roots[i];
    int mult = 1;
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] &&
          std::abs(roots[j] - roots[i]) <= radius * std::max(1.0, std::abs(roots[i]))) {
        center += roots[j];
        ++mult;
        used[j] = true;
      }
    }
    center /= double(mult);
    out.push_back({center, mult});
  }
  return out;
}

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

int rootMultiplicity(const Poly& p, Complex r, double relTol) {
  Poly q = p;
  int mult = 0;
  while (q.degree() >= 1 && std::abs(evalAt(q, r)) <= relTol * evalScale(q, r)) {
    q = deflate(q, r);
    ++mult;
  }
  return mult;
}

Poly commonMonicDivisor(const std::vector<Poly>& ps, double delta) {
  if (ps.empty()) return Poly::one();
  int first = -1;
  for (size_t i = 0; i < ps.size(); ++i)
    if (!ps[i].isZero() && (first < 0 || ps[i].degree() < ps[first].degree()))
      first = static_cast<int>(i);
  if (first < 0) throw Error("commonMonicDivisor: all inputs zero");
  if (ps[first].degree() == 0) return Poly::one();

  std::vector<Complex> roots = polyRoots(ps[first]);
  std::vector<Complex> keep;
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    // cluster delta-close copies of the same root
    std::vector<size_t> cluster{i};
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (!used[j] && std::abs(roots[j] - roots[i]) <= std::sqrt(delta)) cluster.push_back(j);
    Complex center(0.0);
    for (size_t j : cluster) {
      center += roots[j];
      used[j] = true;
    }
    center /= double(cluster.size());
    int mult = static_cast<int>(cluster.size());
    for (const Poly& p : ps) {
      if (p.isZero()) continue;
      mult = std::min(mult, rootMultiplicity(p, center, delta));
      if (mult == 0) break;
    }
    for (int k = 0; k < mult; ++k) keep.push_back(center);
  }
  return Poly::fromRoots(keep);
}

bool polyApproxEq(const Poly& a, const Poly& b, double tol) {
  const double scale = std::max({1.0, a.maxAbsCoeff(), b.maxAbsCoeff()});
  const int d = std::max(a.degree(), b.degree());
  for (int k = 0; k <= d; ++k)
    if (std::abs(a.coeff(k) - b.coeff(k)) > tol * scale) return false;
  return true;
}

double polyResidualNorm(const Poly& p, double scale) {
  return p.maxAbsCoeff() / std::max(scale, 1e-300);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int j = 2; j <= n; ++j) r *= double(j);
  return r;
}

}  // namespace bispec
