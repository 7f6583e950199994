#include "doctest.h"

#include "bispec/quasi.hpp"

#include <cmath>
#include <random>

using namespace bispec;

namespace {

std::mt19937_64 rng(12345);

Poly randomPoly(int deg) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> c(deg + 1);
  for (auto& v : c) v = Complex(u(rng), u(rng));
  c[deg] += Complex(1.0);  // keep the degree
  return Poly(std::move(c));
}

}  // namespace

TEST_CASE("poly arithmetic basics") {
  const Poly x = Poly::var();
  CHECK(polyApproxEq(derivative(x * x), Poly({0.0, 2.0}), 1e-12));
  CHECK(polyApproxEq(shiftByOne(x * x), Poly({1.0, 2.0, 1.0}), 1e-12));
  // (x d/dx - 0)(x d/dx - 1) as a polynomial in the symbol s
  CHECK(polyApproxEq(fallingFactorialProduct(2), Poly({0.0, -1.0, 1.0}), 1e-12));
  CHECK(polyApproxEq(fallingFactorialProduct(3), Poly({0.0, 2.0, -3.0, 1.0}), 1e-12));
}

TEST_CASE("poly eval multiplicativity on random inputs") {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int it = 0; it < 50; ++it) {
    const Poly p = randomPoly(1 + it % 6), q = randomPoly(1 + (it + 3) % 6);
    const Complex x0(u(rng), u(rng));
    const Complex lhs = evalAt(p * q, x0);
    const Complex rhs = evalAt(p, x0) * evalAt(q, x0);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("polyRoots quadratic against the closed form") {
  // u^2 + 3u - 6: roots (-3 +- sqrt(33)) / 2
  const auto roots = polyRoots(Poly({-6.0, 3.0, 1.0}));
  REQUIRE(roots.size() == 2);
  const double s = std::sqrt(33.0);
  CHECK(std::abs(roots[0] - Complex((-3.0 - s) / 2.0)) < 1e-9);
  CHECK(std::abs(roots[1] - Complex((-3.0 + s) / 2.0)) < 1e-9);
  CHECK(std::abs(roots[1].real() - 1.372281) < 1e-6);
  CHECK(std::abs(roots[0].real() + 4.372281) < 1e-6);
}

TEST_CASE("polyRoots multiplicity and edge cases") {
  const auto dbl = polyRoots(Poly({1.0, -2.0, 1.0}));  // (x-1)^2
  REQUIRE(dbl.size() == 2);
  for (Complex r : dbl) CHECK(std::abs(r - Complex(1.0)) < 1e-6);
  const auto lin = polyRoots(Poly::var());
  REQUIRE(lin.size() == 1);
  CHECK(std::abs(lin[0]) < 1e-12);
  CHECK_THROWS_AS(polyRoots(Poly::zero()), Error);
}

TEST_CASE("polyRoots reconstruction round trip") {
  for (int it = 0; it < 20; ++it) {
    const Poly p = monic(randomPoly(2 + it % 5));
    const Poly back = Poly::fromRoots(polyRoots(p));
    CHECK(polyApproxEq(p, back, 1e-7));
  }
}

TEST_CASE("laurentExpand") {
  const RationalFn f1(Poly::one(), Poly({1.0, -2.0, 1.0}));  // 1/(x-1)^2
  const auto g1 = laurentExpand(f1, Complex(1.0), -2, 0);
  CHECK(std::abs(g1[0] - Complex(1.0)) < 1e-12);
  CHECK(std::abs(g1[1]) < 1e-12);
  CHECK(std::abs(g1[2]) < 1e-12);

  const RationalFn f2(Poly::var(), Poly({-1.0, 1.0}));  // x/(x-1) = 1 + 1/(x-1)
  const auto g2 = laurentExpand(f2, Complex(1.0), -1, 0);
  CHECK(std::abs(g2[0] - Complex(1.0)) < 1e-12);
  CHECK(std::abs(g2[1] - Complex(1.0)) < 1e-12);

  const RationalFn f3(Poly::one(), Poly::var());  // 1/x holomorphic at 1
  const auto g3 = laurentExpand(f3, Complex(1.0), -1, 0);
  CHECK(std::abs(g3[0]) < 1e-12);
  CHECK(std::abs(g3[1] - Complex(1.0)) < 1e-12);

  CHECK_THROWS_AS(laurentExpand(RationalFn(), Complex(0.0), -1, 0), Error);
}

TEST_CASE("laurentExpand re-sums to the function value") {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int it = 0; it < 10; ++it) {
    const Poly num = randomPoly(3);
    const Poly den = randomPoly(2);
    const Complex c(u(rng), u(rng));
    if (std::abs(evalAt(den, c)) < 0.1) continue;
    const RationalFn f(num, den);
    const int k = 4;
    const auto g = laurentExpand(f, c, -k, k);
    const Complex h(1e-3, 0.5e-3);
    Complex sum(0.0);
    for (int j = -k; j <= k; ++j) sum += g[j + k] * std::pow(h, double(j));
    const Complex exact = evalAt(f, c + h);
    CHECK(std::abs(sum - exact) < 1e-10 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("expPolyDet small determinants") {
  const BranchedBase one(Complex(1.0));
  const ExpPolySum u(one, Poly::var());
  const ExpPolySum uShift(one, Poly({1.0, 1.0}));
  const ExpPolySum c1(one, Poly::one());
  // det [[1, u], [1, u+1]] = 1
  auto det = expPolyDet({{c1, u}, {c1, uShift}});
  REQUIRE(det.terms().size() == 1);
  CHECK(polyApproxEq(det.terms()[0].second, Poly::one(), 1e-12));

  // det [[u, u(u-1)], [u+1, (u+1)u]] = u(u+1)
  const Poly uu1 = Poly::var() * Poly({-1.0, 1.0});
  auto det2 = expPolyDet({{u, ExpPolySum(one, uu1)},
                          {uShift, ExpPolySum(one, Poly({1.0, 1.0}) * Poly::var())}});
  REQUIRE(det2.terms().size() == 1);
  CHECK(polyApproxEq(det2.terms()[0].second, Poly::var() * Poly({1.0, 1.0}), 1e-12));

  // 1x1 with base z
  const BranchedBase z(Complex(2.0));
  auto det3 = expPolyDet({{ExpPolySum(z, Poly::one())}});
  REQUIRE(det3.terms().size() == 1);
  CHECK(sameBase(det3.terms()[0].first, z));
}

TEST_CASE("expPolyDet is alternating") {
  const BranchedBase z1(Complex(1.5)), z2(Complex(-1.0));
  std::vector<std::vector<ExpPolySum>> m{
      {ExpPolySum(z1, randomPoly(2)), ExpPolySum(z2, randomPoly(1))},
      {ExpPolySum(z2, randomPoly(2)), ExpPolySum(z1, randomPoly(2))}};
  const auto d1 = expPolyDet(m);
  std::swap(m[0], m[1]);
  const auto d2 = expPolyDet(m);
  const auto sum = d1 + d2;
  CHECK(sum.isZero());
}

TEST_CASE("expPolyDet size cap") {
  std::vector<std::vector<ExpPolySum>> m(7, std::vector<ExpPolySum>(7));
  CHECK_THROWS_WITH_AS(expPolyDet(m), "expPolyDet: desk-scale exceeded", Error);
}

TEST_CASE("branched bases keep their argument") {
  const BranchedBase minusOne(Complex(-1.0));
  CHECK(minusOne.arg == doctest::Approx(M_PI));
  // (-1)*(-1) = 1 with argument 2*pi is a different branch than plain 1
  const BranchedBase sq = minusOne * minusOne;
  CHECK(std::abs(sq.value - Complex(1.0)) < 1e-12);
  CHECK(sq.arg == doctest::Approx(2.0 * M_PI));
  CHECK(!sameBase(sq, BranchedBase(Complex(1.0))));
  CHECK_THROWS_AS(BranchedBase(Complex(0.0)), Error);
  CHECK_THROWS_AS(BranchedBase(Complex(1.0), 1.0), Error);
}
