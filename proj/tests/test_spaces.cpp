#include "doctest.h"

#include "bispec/spaces.hpp"

#include <cmath>
#include <random>

using namespace bispec;

namespace {

std::mt19937_64 rng(2024);

Poly randomPoly(int deg, bool nonzeroAtZero = false) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> c(deg + 1);
  for (auto& v : c) v = Complex(u(rng), u(rng));
  c[deg] += Complex(1.5);
  if (nonzeroAtZero && std::abs(c[0]) < 0.3) c[0] += Complex(1.0);
  return Poly(std::move(c));
}

// span{u, u(u-1)}: one base z = 1
QuasiExpSpace example1Space() {
  QuasiExpSpace u;
  u.groups.push_back({BranchedBase(Complex(1.0)),
                      {Poly::var(), Poly::var() * Poly({-1.0, 1.0})}});
  return u;
}

// span{u, (-1)^u u}: bases 1 and -1
QuasiExpSpace example23Space() {
  QuasiExpSpace u;
  u.groups.push_back({BranchedBase(Complex(1.0)), {Poly::var()}});
  u.groups.push_back({BranchedBase(Complex(-1.0)), {Poly::var()}});
  return u;
}

QuasiPolySpace span1x() {
  QuasiPolySpace v;
  v.groups.push_back({Complex(0.0), {Poly::one(), Poly::var()}});
  return v;
}

}  // namespace

namespace {

// The stored pair (exponent, part) is evaluated as a function; the part may
// carry powers of x traded against the exponent.
Complex evalQW(const QuasiWronskianX& w, Complex x) {
  return std::pow(x, w.exponent) * evalAt(w.part, x);
}

}  // namespace

TEST_CASE("wronskians") {
  // Wr(1, x) = 1 and Wr(x, x^2) = x^2, compared as functions
  const auto w1 = wronskianX({{Complex(0.0), Poly::one()}, {Complex(0.0), Poly::var()}});
  const auto w2 = wronskianX({{Complex(0.0), Poly::var()}, {Complex(0.0), Poly::monomial(2)}});
  for (double s : {0.6, 1.3, 2.4}) {
    const Complex x0(s, 0.2);
    CHECK(std::abs(evalQW(w1, x0) - Complex(1.0)) < 1e-10);
    CHECK(std::abs(evalQW(w2, x0) - x0 * x0) < 1e-9);
  }
  // discrete Wr(u, u(u-1)) = u(u+1)
  const auto dw = discreteWronskianU({{BranchedBase(Complex(1.0)), Poly::var()},
                                      {BranchedBase(Complex(1.0)), Poly::var() * Poly({-1.0, 1.0})}});
  CHECK(polyApproxEq(dw.part, Poly::var() * Poly({1.0, 1.0}), 1e-12));
}

TEST_CASE("exponents of quasi-polynomial spaces") {
  CHECK(exponentsAt(span1x(), Complex(1.0)) == std::vector<int>{0, 1});
  QuasiPolySpace v;  // span{1, x^2}: regular away from 0
  v.groups.push_back({Complex(0.0), {Poly::one(), Poly::monomial(2)}});
  CHECK(exponentsAt(v, Complex(0.7, 0.2)) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(exponentsAt(v, Complex(0.0)), Error);
}

TEST_CASE("discrete exponents of the three golden data sets") {
  const auto e1 = discreteExponentsAt(example1Space(), Complex(0.0));
  CHECK(e1.exponents == std::vector<int>{1, 2});
  const auto e3 = discreteExponentsAt(example23Space(), Complex(-1.0));
  CHECK(e3.exponents == std::vector<int>{0, 3});
  const auto e2 = discreteExponentsAt(example23Space(), Complex(0.0));
  CHECK(e2.exponents == std::vector<int>{1, 2});
  QuasiExpSpace u;  // span{1, u} is regular everywhere
  u.groups.push_back({BranchedBase(Complex(1.0)), {Poly::one(), Poly::var()}});
  CHECK(discreteExponentsAt(u, Complex(0.33, -0.7)).exponents == std::vector<int>{0, 1});
}

TEST_CASE("frame of small spaces") {
  const Frame f1 = frame(example1Space());
  REQUIRE(f1.polys.size() == 2);
  CHECK(polyApproxEq(f1.polys[0], Poly::var(), 1e-9));
  CHECK(polyApproxEq(f1.polys[1], Poly::one(), 1e-9));

  QuasiExpSpace u;
  u.groups.push_back({BranchedBase(Complex(1.0)), {Poly::one(), Poly::var()}});
  const Frame f2 = frame(u);
  CHECK(polyApproxEq(f2.polys[0], Poly::one(), 1e-9));
  CHECK(polyApproxEq(f2.polys[1], Poly::one(), 1e-9));

  QuasiExpSpace single;
  const Complex c(0.8, -0.1);
  single.groups.push_back({BranchedBase(Complex(2.0)), {Poly({-c, 1.0})}});
  const Frame f3 = frame(single);
  REQUIRE(f3.polys.size() == 1);
  CHECK(polyApproxEq(f3.polys[0], Poly({-c, 1.0}), 1e-9));
}

TEST_CASE("frame divisibility law on random quasi-exponential spaces") {
  // S_i(u) = prod_{k<=i} prod_{j<=i-k+1} P_k(u+j-1), checked by root matching
  for (int it = 0; it < 5; ++it) {
    QuasiExpSpace u;
    u.groups.push_back({BranchedBase(Complex(1.0 + 0.3 * it)), {randomPoly(2)}});
    u.groups.push_back({BranchedBase(Complex(-1.2, 0.4)), {randomPoly(1), randomPoly(3)}});
    const Frame fr = frame(u);
    REQUIRE(fr.polys.size() == 3);
    // reconstruct S_M from the frame and compare against the Wronskian part
    Poly recon = Poly::one();
    const int m = 3;
    for (int k = 1; k <= m; ++k)
      for (int j = 1; j <= m - k + 1; ++j)
        recon = recon * shiftBy(fr.polys[k - 1], double(j - 1));
    const Poly s = monic(discreteWronskianU(u.basis()).part);
    CHECK(polyApproxEq(recon, s, 1e-6));
  }
}

TEST_CASE("monic fundamental differential operator of span{1, x^2}") {
  QuasiPolySpace v;
  v.groups.push_back({Complex(0.0), {Poly::one(), Poly::monomial(2)}});
  const RatDiffOp d = monicFundamentalDiffOp(v);
  // d^2 - (1/x) d
  REQUIRE(d.order() == 2);
  CHECK(polyApproxEq(d.coeffs[2].num(), Poly::one(), 1e-12));
  CHECK(polyApproxEq(d.coeffs[1].num(), Poly({-1.0}), 1e-12));
  CHECK(polyApproxEq(d.coeffs[1].den(), Poly::var(), 1e-12));
  CHECK(d.coeffs[0].isZero());
}

TEST_CASE("regularized operator of span{1, x} is (xd)^2 - (xd)") {
  const DiffOp d = regularizedFundamentalDiffOp(span1x());
  CHECK(d.order == 2);
  CHECK(polyApproxEq(d.coeffOfPower(2), Poly::one(), 1e-10));
  CHECK(polyApproxEq(d.coeffOfPower(1), Poly({-1.0}), 1e-10));
  CHECK(polyApproxEq(d.coeffOfPower(0), Poly::zero(), 1e-10));
}

TEST_CASE("golden example 1: span{u, u(u-1)} with lambda = 0") {
  const auto reg = regularizedFundamentalDiffeOp(example1Space(), {Complex(0.0)});
  // u(u+1) tau^2 - 2u(u+2) tau + (u+1)(u+2)
  CHECK(reg.nondegenerate);
  REQUIRE(reg.op.order == 2);
  CHECK(polyApproxEq(reg.op.coeffs[0], Poly({0.0, 1.0, 1.0}), 1e-9));
  CHECK(polyApproxEq(reg.op.coeffs[1], Poly({0.0, -4.0, -2.0}), 1e-9));
  CHECK(polyApproxEq(reg.op.coeffs[2], Poly({2.0, 3.0, 1.0}), 1e-9));
}

TEST_CASE("golden examples 2 and 3: span{u, (-1)^u u}") {
  // with lambda = 0 the data is numerically non-degenerate but degenerate
  const auto reg2 = regularizedFundamentalDiffeOp(example23Space(), {Complex(0.0)});
  CHECK(!reg2.nondegenerate);
  REQUIRE(reg2.op.order == 2);
  CHECK(polyApproxEq(reg2.op.coeffs[0], Poly::var(), 1e-9));
  CHECK(polyApproxEq(reg2.op.coeffs[1], Poly::zero(), 1e-9));
  CHECK(polyApproxEq(reg2.op.coeffs[2], Poly({-2.0, -1.0}), 1e-9));

  // with lambda = -1 the same operator is the non-degenerate answer
  const auto reg3 = regularizedFundamentalDiffeOp(example23Space(), {Complex(-1.0)});
  CHECK(reg3.nondegenerate);
  REQUIRE(reg3.op.order == 2);
  CHECK(polyApproxEq(reg3.op.coeffs[0], Poly::var(), 1e-9));
  CHECK(polyApproxEq(reg3.op.coeffs[1], Poly::zero(), 1e-9));
  CHECK(polyApproxEq(reg3.op.coeffs[2], Poly({-2.0, -1.0}), 1e-9));

  // both data sets balance 2 = 2
  const auto d2 = dataOf(example23Space(), {Complex(0.0)});
  CHECK(d2.xWeight() == 2);
  CHECK(d2.uWeight() == 2);
  const auto d3 = dataOf(example23Space(), {Complex(-1.0)});
  CHECK(d3.xWeight() == 2);
  CHECK(d3.uWeight() == 2);
  CHECK(d3.x.size() == 1);
  CHECK(d3.x[0].degrees == std::vector<int>{2});
}

TEST_CASE("fundamental operators annihilate their spaces") {
  for (int it = 0; it < 8; ++it) {
    QuasiPolySpace v;
    v.groups.push_back({Complex(0.31 + it * 0.11, 0.4), {randomPoly(2)}});
    v.groups.push_back({Complex(-1.27, -0.35), {randomPoly(1), randomPoly(3)}});
    const DiffOp d = regularizedFundamentalDiffOp(v);
    for (const auto& [lambda, p] : v.basis())
      CHECK(annihilationResidual(d, lambda, p) < 1e-8);

    QuasiExpSpace u;
    u.groups.push_back({BranchedBase(Complex(0.9 + 0.2 * it, 0.3)), {randomPoly(2)}});
    u.groups.push_back({BranchedBase(Complex(-1.1, 0.8)), {randomPoly(1)}});
    const Poly s = discreteWronskianU(u.basis()).part;
    std::vector<Complex> candidates;
    if (s.degree() >= 1)
      for (Complex r : polyRoots(s)) candidates.push_back(r);
    const auto reg = regularizedFundamentalDiffeOp(u, candidates);
    for (const auto& [base, q] : u.basis())
      CHECK(annihilationResidual(reg.op, base, q) < 1e-8);
  }
}

TEST_CASE("two construction routes agree") {
  for (int it = 0; it < 6; ++it) {
    QuasiPolySpace v;
    v.groups.push_back({Complex(0.21 + it * 0.13, -0.3), {randomPoly(1)}});
    v.groups.push_back({Complex(1.4, 0.52), {randomPoly(2)}});
    const DiffOp a = regularizedFundamentalDiffOp(v);
    const DiffOp b = regularizedFundamentalDiffOpDirect(v);
    REQUIRE(a.order == b.order);
    double scale = 0.0;
    for (int i = 0; i <= a.order; ++i) scale = std::max(scale, a.logCoeffs[i].maxAbsCoeff());
    for (int i = 0; i <= a.order; ++i) {
      const Poly diff = a.logCoeffs[i] - b.logCoeffs[i];
      CHECK(diff.maxAbsCoeff() <= 1e-7 * scale);
    }
  }
}

TEST_CASE("degree-balance and non-degeneracy checks") {
  const auto c = checks(span1x());
  CHECK(c.degreeBalance);  // 0 = 0, no singular points
  // span{1, x} contains the pure monomial x^{lambda + n_11} = 1: degenerate
  CHECK(!c.nondegenerate);

  QuasiPolySpace good;
  good.groups.push_back({Complex(0.5, 0.3), {Poly({1.0, 1.0})}});  // x^lambda (1 + x)
  const auto cg = checks(good);
  CHECK(cg.degreeBalance);
  CHECK(cg.nondegenerate);

  QuasiPolySpace bad;  // contains x^{lambda + n_11}
  bad.groups.push_back({Complex(0.5, 0.0), {Poly::var()}});
  CHECK(!checks(bad).nondegenerate);
}

TEST_CASE("conjugate space of span{1, x}") {
  // Wr = 1: the star space is again span{1, x}, the dagger space divides by x^2
  auto evalConj = [](const QuasiRationalX& e, Complex x) {
    return std::pow(x, e.exponent) * evalAt(e.part, x);
  };
  const auto star = conjugateSpace(span1x(), ConjX::Star);
  REQUIRE(star.size() == 2);
  const auto dagger = conjugateSpace(span1x(), ConjX::Dagger);
  REQUIRE(dagger.size() == 2);
  // fit a + b x on two samples, verify on two more
  for (int which = 0; which < 2; ++which) {
    const auto& fam = which == 0 ? star : dagger;
    for (const auto& e : fam) {
      auto f = [&](Complex x) {
        return which == 0 ? evalConj(e, x) : evalConj(e, x) * x * x;
      };
      const Complex x1(0.73, 0.21), x2(1.62, -0.34), x3(2.1, 0.55), x4(-0.8, 0.96);
      const Complex b = (f(x2) - f(x1)) / (x2 - x1);
      const Complex a = f(x1) - b * x1;
      CHECK(std::abs(f(x3) - (a + b * x3)) < 1e-8 * std::max(1.0, std::abs(f(x3))));
      CHECK(std::abs(f(x4) - (a + b * x4)) < 1e-8 * std::max(1.0, std::abs(f(x4))));
    }
  }
}

TEST_CASE("discrete Wronskian divisibility by the exponent staircase") {
  for (int it = 0; it < 5; ++it) {
    QuasiExpSpace u;
    u.groups.push_back({BranchedBase(Complex(1.3, 0.2 * it)), {randomPoly(2)}});
    u.groups.push_back({BranchedBase(Complex(-0.7, 0.9)), {randomPoly(2)}});
    const Complex lambda(0.37 * it - 1.0, 0.21);
    const auto de = discreteExponentsAt(u, lambda);
    const int m = u.dim();
    Poly divisor = Poly::one();
    for (int s = 1; s <= m; ++s)
      for (int j = s - m; j <= de.exponents[s - 1] - m; ++j)
        divisor = divisor * Poly({-(lambda + double(j)), Complex(1.0)});
    const Poly wr = discreteWronskianU(u.basis()).part;
    if (divisor.degree() >= 1) {
      const auto [q, r] = polyDivide(wr, divisor);
      CHECK(r.maxAbsCoeff() <= 1e-7 * std::max(1.0, wr.maxAbsCoeff()));
    }
  }
}

TEST_CASE("numerically non-degenerate spaces factor through local frames") {
  // Wr^d = prod z^{M_a u} * prod_k prod_j Q_k(u+j-1) up to scalar
  QuasiExpSpace u = example1Space();
  const auto de = discreteExponentsAt(u, Complex(0.0));
  const int m = u.dim();
  Poly recon = Poly::one();
  for (int k = 1; k <= m; ++k)
    for (int j = 1; j <= m - k + 1; ++j)
      recon = recon * shiftBy(de.frameTypePolys[k - 1], double(j - 1));
  const Poly wr = monic(discreteWronskianU(u.basis()).part);
  CHECK(polyApproxEq(monic(recon), wr, 1e-8));
}

TEST_CASE("regularized conjugate space and the flipped operator") {
  // D^ddagger = tau^M B_M + ... + B_0 annihilates U^ddagger
  QuasiExpSpace u;
  u.groups.push_back({BranchedBase(Complex(1.6, 0.3)), {randomPoly(1)}});
  u.groups.push_back({BranchedBase(Complex(-0.8, 1.1)), {randomPoly(2)}});
  const Poly s = discreteWronskianU(u.basis()).part;
  std::vector<Complex> candidates;
  if (s.degree() >= 1)
    for (Complex r : polyRoots(s)) candidates.push_back(r);
  const auto reg = regularizedFundamentalDiffeOp(u, candidates);
  const auto conj = conjugateSpaceU(u, ConjU::DDagger, candidates);
  REQUIRE(static_cast<int>(conj.size()) == u.dim());
  const int M = reg.op.order;
  for (const auto& g : conj) {
    // apply tau^M B_M + ... + tau B_1 + B_0, evaluating term by term
    for (double sr : {0.41, 1.27, -0.93}) {
      const Complex u0(sr, 0.62 * sr + 0.1);
      Complex acc(0.0);
      double scale = 1e-300;
      Complex zp(1.0);
      for (int k = 0; k <= M; ++k) {
        const Complex term = zp * evalAt(reg.op.coeffs[k], u0 + double(k)) *
                             evalAt(g.part, u0 + double(k));
        acc += term;
        scale = std::max(scale, std::abs(term));
        zp *= g.base.value;
      }
      CHECK(std::abs(acc) <= 1e-8 * scale);
    }
  }
  // pole bound: poles of U^ddagger lie among lambda_i - N_i + j, j = 0..n_max
  for (const auto& g : conj) {
    if (g.part.den().degree() < 1) continue;
    for (Complex pole : polyRoots(g.part.den())) {
      bool covered = false;
      for (const auto& xg : reg.xdata) {
        const int ni = static_cast<int>(xg.degrees.size());
        for (int j = 0; j <= xg.degrees.back(); ++j)
          if (std::abs(pole - (xg.lambda - double(ni) + double(j))) < 1e-5) covered = true;
      }
      CHECK(covered);
    }
  }
}

TEST_CASE("formal conjugate of the monic operator annihilates the star space") {
  QuasiPolySpace v;
  v.groups.push_back({Complex(0.4, 0.6), {randomPoly(1)}});
  v.groups.push_back({Complex(-0.9, -0.2), {randomPoly(2)}});
  const RatDiffOp monicOp = monicFundamentalDiffOp(v);
  const RatDiffOp conjOp = formalConjugate(monicOp);
  for (const auto& e : conjugateSpace(v, ConjX::Star)) {
    const auto res = applyRat(conjOp, {e.exponent, e.part});
    REQUIRE(res.terms().size() == 1);
    // annihilation measured pointwise against the input magnitude
    for (double sr : {0.52, 1.36, -1.18}) {
      const Complex x0(sr, 0.44 * sr + 0.2);
      const Complex val = evalAt(res.terms()[0].second, x0);
      const double scale = std::max(1.0, std::abs(evalAt(e.part, x0)));
      CHECK(std::abs(val) <= 1e-7 * scale);
    }
  }
}

TEST_CASE("quasi kernels recover generating polynomials") {
  // golden example 1 operator has kernel {u, u(u-1)} at base 1
  const auto reg = regularizedFundamentalDiffeOp(example1Space(), {Complex(0.0)});
  const auto ker = quasiExpKernel(reg.op, BranchedBase(Complex(1.0)), 2);
  REQUIRE(ker.size() == 2);
  // span contains u and u(u-1): check by annihilation and dimension
  for (const auto& q : ker)
    CHECK(annihilationResidual(reg.op, BranchedBase(Complex(1.0)), q) < 1e-8);

  DiffeOp shift;  // tau - z has kernel q = 1 at base z
  shift.order = 1;
  const Complex z(1.9, -0.4);
  shift.coeffs = {Poly::one(), Poly::constant(-z)};
  const auto kz = quasiExpKernel(shift, BranchedBase(z), 0);
  REQUIRE(kz.size() == 1);
  CHECK(polyApproxEq(kz[0], Poly::one(), 1e-9));
}
