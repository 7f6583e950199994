#include "doctest.h"

#include "bispec/operators.hpp"

#include <random>

using namespace bispec;

namespace {

std::mt19937_64 rng(777);

Poly randomPoly(int deg) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> c(deg + 1);
  for (auto& v : c) v = Complex(u(rng), u(rng));
  c[deg] += Complex(1.0);
  return Poly(std::move(c));
}

DiffOp randomDiffOp(int order) {
  std::vector<Poly> cs(order + 1);
  for (auto& c : cs) c = randomPoly(1 + int(rng() % 3));
  return normalizeDiffOp(std::move(cs));
}

bool diffOpApproxEq(const DiffOp& a, const DiffOp& b, double tol) {
  if (a.order != b.order) return false;
  for (int i = 0; i <= a.order; ++i)
    if (!polyApproxEq(a.logCoeffs[i], b.logCoeffs[i], tol)) return false;
  return true;
}

}  // namespace

TEST_CASE("stdToLog falling factorials") {
  // x^2 d^2 -> (xd)^2 - (xd)
  const DiffOp d2 = stdToLog({Poly::zero(), Poly::zero(), Poly::one()});
  CHECK(d2.order == 2);
  CHECK(polyApproxEq(d2.coeffOfPower(2), Poly::one(), 1e-12));
  CHECK(polyApproxEq(d2.coeffOfPower(1), Poly({-1.0}), 1e-12));
  CHECK(polyApproxEq(d2.coeffOfPower(0), Poly::zero(), 1e-12));
  // x^3 d^3 -> (xd)^3 - 3(xd)^2 + 2(xd)
  const DiffOp d3 = stdToLog({Poly::zero(), Poly::zero(), Poly::zero(), Poly::one()});
  CHECK(polyApproxEq(d3.coeffOfPower(3), Poly::one(), 1e-12));
  CHECK(polyApproxEq(d3.coeffOfPower(2), Poly({-3.0}), 1e-12));
  CHECK(polyApproxEq(d3.coeffOfPower(1), Poly({2.0}), 1e-12));
  // constants stay constants
  const DiffOp d0 = stdToLog({Poly::constant(Complex(3.0, 1.0))});
  CHECK(d0.order == 0);
  CHECK(polyApproxEq(d0.logCoeffs[0], Poly::constant(Complex(3.0, 1.0)), 1e-12));
}

TEST_CASE("stdToLog / logToStd round trip on random operators") {
  for (int it = 0; it < 20; ++it) {
    const int order = 1 + int(rng() % 4);
    std::vector<Poly> stdCoeffs(order + 1);
    for (auto& c : stdCoeffs) c = randomPoly(int(rng() % 3));
    const DiffOp d = stdToLog(stdCoeffs);
    const auto back = logToStd(d);
    REQUIRE(back.size() == stdCoeffs.size());
    for (size_t k = 0; k < stdCoeffs.size(); ++k)
      CHECK(polyApproxEq(back[k], stdCoeffs[k], 1e-10));
  }
}

TEST_CASE("applyDiff on quasi-monomials") {
  // (xd) x^lambda = lambda x^lambda
  const Complex lambda(0.7, 0.3);
  DiffOp xd;
  xd.order = 1;
  xd.logCoeffs = {Poly::one(), Poly::zero()};
  const auto out = applyDiff(xd, {lambda, RationalFn::fromPoly(Poly::one())});
  REQUIRE(out.terms().size() == 1);
  CHECK(std::abs(out.terms()[0].first - lambda) < 1e-12);
  CHECK(polyApproxEq(out.terms()[0].second.num(), Poly::constant(lambda), 1e-12));

  // ((xd)^2 - (xd)) x^2 = 2 x^2
  const DiffOp d2 = stdToLog({Poly::zero(), Poly::zero(), Poly::one()});
  const auto out2 = applyDiff(d2, {Complex(0.0), RationalFn::fromPoly(Poly::monomial(2))});
  REQUIRE(out2.terms().size() == 1);
  CHECK(polyApproxEq(out2.terms()[0].second.num(), Poly::monomial(2, Complex(2.0)), 1e-10));
}

TEST_CASE("applyDiffe basics") {
  // tau (2^u u) = 2^u * 2(u+1)
  DiffeOp tau;
  tau.order = 1;
  tau.coeffs = {Poly::one(), Poly::zero()};
  const auto out = applyDiffe(tau, {BranchedBase(Complex(2.0)), RationalFn::fromPoly(Poly::var())});
  CHECK(polyApproxEq(out.part.num(), Poly({2.0, 2.0}), 1e-12));

  // any operator applied to 0 gives 0
  const auto zero = applyDiffe(tau, {BranchedBase(Complex(2.0)), RationalFn()});
  CHECK(zero.part.isZero());
}

TEST_CASE("u tau^2 - (u+2) annihilates span{u, (-1)^u u}") {
  DiffeOp d;
  d.order = 2;
  d.coeffs = {Poly::var(), Poly::zero(), Poly({-2.0, -1.0})};
  CHECK(annihilationResidual(d, BranchedBase(Complex(1.0)), Poly::var()) < 1e-14);
  CHECK(annihilationResidual(d, BranchedBase(Complex(-1.0)), Poly::var()) < 1e-14);
  // mixed-base element through the ExpPolySum route
  ExpPolySum f(BranchedBase(Complex(1.0)), Poly::var());
  f.add(BranchedBase(Complex(-1.0)), Poly({0.0, 3.0}));
  CHECK(applyDiffe(d, f).isZero());
  // the sign matters: with +(u+2) nothing is annihilated
  DiffeOp wrong;
  wrong.order = 2;
  wrong.coeffs = {Poly::var(), Poly::zero(), Poly({2.0, 1.0})};
  CHECK(annihilationResidual(wrong, BranchedBase(Complex(-1.0)), Poly::var()) > 0.1);
}

TEST_CASE("bigradeExtract") {
  const DiffOp d2 = stdToLog({Poly::zero(), Poly::zero(), Poly::one()});
  const auto t = bigradeExtract(d2);
  REQUIRE(t.entries.size() == 2);
  CHECK(std::abs(t.entries.at({0, 2}) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(t.entries.at({0, 1}) + Complex(1.0)) < 1e-12);

  // u(u+1) tau^2 - 2u(u+2) tau + (u+1)(u+2)
  DiffeOp ex1;
  ex1.order = 2;
  ex1.coeffs = {Poly({0.0, 1.0, 1.0}), Poly({0.0, -4.0, -2.0}), Poly({2.0, 3.0, 1.0})};
  const auto te = bigradeExtract(ex1);
  CHECK(std::abs(te.entries.at({2, 2}) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(te.entries.at({1, 2}) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(te.entries.at({2, 1}) + Complex(2.0)) < 1e-12);
  CHECK(std::abs(te.entries.at({1, 1}) + Complex(4.0)) < 1e-12);
  CHECK(std::abs(te.entries.at({2, 0}) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(te.entries.at({1, 0}) - Complex(3.0)) < 1e-12);
  CHECK(std::abs(te.entries.at({0, 0}) - Complex(2.0)) < 1e-12);
  CHECK(te.entries.size() == 7);

  DiffOp zero;
  zero.order = 0;
  zero.logCoeffs = {Poly::zero()};
  CHECK(bigradeExtract(zero).entries.empty());
}

TEST_CASE("regrade inverts bigradeExtract") {
  for (int it = 0; it < 20; ++it) {
    const DiffOp d = randomDiffOp(1 + int(rng() % 3));
    const DiffOp back = regradeToDiff(bigradeExtract(d));
    CHECK(diffOpApproxEq(d, back, 1e-12));
  }
}

TEST_CASE("composition against sequential application") {
  for (int it = 0; it < 10; ++it) {
    const DiffOp a = randomDiffOp(1 + int(rng() % 2));
    const DiffOp b = randomDiffOp(1 + int(rng() % 2));
    const DiffOp ab = composeDiff(a, b);
    const Complex lambda(0.3, -0.8);
    const QuasiRationalX f{lambda, RationalFn::fromPoly(randomPoly(3))};
    const auto once = applyDiff(ab, f);
    const auto inner = applyDiff(b, f);
    REQUIRE(inner.terms().size() == 1);
    const auto twice = applyDiff(a, {lambda, inner.terms()[0].second});
    const RationalFn diff = once.terms()[0].second - twice.terms()[0].second;
    const double scale = std::max(1.0, once.terms()[0].second.num().maxAbsCoeff());
    CHECK(diff.num().maxAbsCoeff() <= 1e-8 * scale);
  }
}

TEST_CASE("compose constant-coefficient log factors") {
  // (xd - a)(xd - b) = (xd)^2 - (a+b)(xd) + ab for constants
  const Complex a(1.0, 2.0), b(-0.5, 0.25);
  DiffOp fa, fb;
  fa.order = fb.order = 1;
  fa.logCoeffs = {Poly::one(), Poly::constant(-a)};
  fb.logCoeffs = {Poly::one(), Poly::constant(-b)};
  const DiffOp prod = composeDiff(fa, fb);
  CHECK(polyApproxEq(prod.coeffOfPower(1), Poly::constant(-(a + b)), 1e-12));
  CHECK(polyApproxEq(prod.coeffOfPower(0), Poly::constant(a * b), 1e-12));
}

TEST_CASE("first-order rational factors kill their quasi-solutions") {
  // (d/dx - ln'(x^lambda)) x^lambda = 0
  const Complex lambda(0.4, 1.1);
  const auto d = composeFirstOrderFactorsDiff({logDerivative(lambda, RationalFn::fromPoly(Poly::one()))});
  const auto res = applyRat(d, {lambda, RationalFn::fromPoly(Poly::one())});
  CHECK(res.approxZero(1e-12));

  // (tau - z y(u+1)/y(u)) z^u y(u) = 0  (telescoping)
  const Poly y = randomPoly(2);
  const Complex z(1.7, -0.6);
  RationalFn g(z * shiftByOne(y), y);
  const auto dd = composeFirstOrderFactorsDiffe({g});
  const auto resU = applyRat(dd, {BranchedBase(z), RationalFn::fromPoly(y)});
  CHECK(resU.part.num().maxAbsCoeff() <= 1e-10 * std::max(1.0, y.maxAbsCoeff()));
}

TEST_CASE("formal conjugate reverses composition order") {
  // (AB)^* = B^* A^* checked by evaluation at sample points
  const RationalFn r1 = RationalFn(randomPoly(1), randomPoly(1));
  const RationalFn r2 = RationalFn(randomPoly(2), randomPoly(1));
  const RatDiffOp a = diffFactor(r1), b = diffFactor(r2);
  const RatDiffOp lhs = formalConjugate(composeRat(a, b));
  const RatDiffOp rhs = composeRat(formalConjugate(b), formalConjugate(a));
  const QuasiRationalX f{Complex(0.25, 0.5), RationalFn::fromPoly(randomPoly(2))};
  const auto va = applyRat(lhs, f).terms();
  const auto vb = applyRat(rhs, f).terms();
  REQUIRE(va.size() == 1);
  REQUIRE(vb.size() == 1);
  for (double s : {0.83, 1.41, -0.67}) {
    const Complex x0(s, 0.35 * s);
    const Complex p = evalAt(va[0].second, x0);
    const Complex q = evalAt(vb[0].second, x0);
    CHECK(std::abs(p - q) <= 1e-8 * std::max(1.0, std::max(std::abs(p), std::abs(q))));
  }
}
