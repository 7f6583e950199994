#include "bispec/operators.hpp"

#include <algorithm>
#include <cmath>

namespace bispec {

namespace {

// Stirling numbers of the second kind, S2[j][k]: (x d/dx)^j = sum_k S2 x^k d/dx^k.
std::vector<std::vector<double>> stirling2(int n) {
  std::vector<std::vector<double>> s(n + 1, std::vector<double>(n + 1, 0.0));
  s[0][0] = 1.0;
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= j; ++k) s[j][k] = double(k) * s[j - 1][k] + s[j - 1][k - 1];
  return s;
}

Complex ipow(Complex z, int k) {
  Complex r(1.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

DiffOp normalizeDiffOp(std::vector<Poly> logCoeffs) {
  while (logCoeffs.size() > 1 && logCoeffs.front().isZero())
    logCoeffs.erase(logCoeffs.begin());
  DiffOp d;
  d.order = static_cast<int>(logCoeffs.size()) - 1;
  d.logCoeffs = std::move(logCoeffs);
  return d;
}

DiffeOp normalizeDiffeOp(std::vector<Poly> coeffs) {
  while (coeffs.size() > 1 && coeffs.front().isZero()) coeffs.erase(coeffs.begin());
  DiffeOp d;
  d.order = static_cast<int>(coeffs.size()) - 1;
  d.coeffs = std::move(coeffs);
  return d;
}

DiffOp stdToLog(const std::vector<Poly>& stdCoeffs) {
  const int kMax = static_cast<int>(stdCoeffs.size()) - 1;
  std::vector<Poly> byPower(kMax + 1, Poly::zero());
  for (int k = 0; k <= kMax; ++k) {
    const Poly ff = fallingFactorialProduct(k);  // x^k d/dx^k = ff(x d/dx)
    for (int j = 0; j <= ff.degree(); ++j)
      byPower[j] = byPower[j] + ff.coeff(j) * stdCoeffs[k];
  }
  std::vector<Poly> logCoeffs(byPower.rbegin(), byPower.rend());
  return normalizeDiffOp(std::move(logCoeffs));
}

std::vector<Poly> logToStd(const DiffOp& d) {
  const auto s2 = stirling2(d.order);
  std::vector<Poly> out(d.order + 1, Poly::zero());
  for (int j = 0; j <= d.order; ++j)
    for (int k = 0; k <= j; ++k) out[k] = out[k] + s2[j][k] * d.coeffOfPower(j);
  while (out.size() > 1 && out.back().isZero()) out.pop_back();
  return out;
}

BigradedTable bigradeExtract(const DiffOp& d) {
  BigradedTable t;
  t.axis = BigradedTable::Axis::XLog;
  for (int j = 0; j <= d.order; ++j) {
    const Poly& a = d.coeffOfPower(j);
    for (int i = 0; i <= a.degree(); ++i)
      if (a.coeff(i) != Complex(0.0)) t.entries[{i, j}] = a.coeff(i);
  }
  return t;
}

BigradedTable bigradeExtract(const DiffeOp& d) {
  BigradedTable t;
  t.axis = BigradedTable::Axis::UTau;
  for (int j = 0; j <= d.order; ++j) {
    const Poly& b = d.coeffOfPower(j);
    for (int i = 0; i <= b.degree(); ++i)
      if (b.coeff(i) != Complex(0.0)) t.entries[{i, j}] = b.coeff(i);
  }
  return t;
}

DiffOp regradeToDiff(const BigradedTable& t) {
  int maxJ = 0, maxI = 0;
  for (const auto& [ij, v] : t.entries) {
    maxI = std::max(maxI, ij.first);
    maxJ = std::max(maxJ, ij.second);
  }
  std::vector<Poly> byPower(maxJ + 1, Poly::zero());
  for (const auto& [ij, v] : t.entries)
    byPower[ij.second] = byPower[ij.second] + Poly::monomial(ij.first, v);
  std::vector<Poly> logCoeffs(byPower.rbegin(), byPower.rend());
  return normalizeDiffOp(std::move(logCoeffs));
}

DiffeOp regradeToDiffe(const BigradedTable& t) {
  int maxJ = 0;
  for (const auto& [ij, v] : t.entries) maxJ = std::max(maxJ, ij.second);
  std::vector<Poly> byPower(maxJ + 1, Poly::zero());
  for (const auto& [ij, v] : t.entries)
    byPower[ij.second] = byPower[ij.second] + Poly::monomial(ij.first, v);
  std::vector<Poly> coeffs(byPower.rbegin(), byPower.rend());
  return normalizeDiffeOp(std::move(coeffs));
}

QuasiPolySumX applyDiff(const DiffOp& d, const QuasiRationalX& f) {
  std::vector<RationalFn> parts(d.order + 1);
  parts[0] = f.part;
  const RationalFn x = RationalFn::fromPoly(Poly::var());
  for (int j = 1; j <= d.order; ++j)
    parts[j] = f.exponent * parts[j - 1] + x * derivative(parts[j - 1]);
  RationalFn acc;
  for (int i = 0; i <= d.order; ++i)
    acc = acc + RationalFn::fromPoly(d.logCoeffs[i]) * parts[d.order - i];
  QuasiPolySumX out;
  out.add(f.exponent, acc);
  return out;
}

QuasiRationalU applyDiffe(const DiffeOp& d, const QuasiRationalU& f) {
  RationalFn acc;
  for (int i = 0; i <= d.order; ++i) {
    const int k = d.order - i;
    acc = acc + ipow(f.base.value, k) * (RationalFn::fromPoly(d.coeffs[i]) * shiftBy(f.part, double(k)));
  }
  return {f.base, acc};
}

ExpPolySum applyDiffe(const DiffeOp& d, const ExpPolySum& f) {
  ExpPolySum out;
  for (const auto& [base, p] : f.terms()) {
    Poly acc;
    for (int i = 0; i <= d.order; ++i) {
      const int k = d.order - i;
      acc = acc + ipow(base.value, k) * (d.coeffs[i] * shiftBy(p, double(k)));
    }
    out.add(base, acc);
  }
  return out;
}

DiffOp composeDiff(const DiffOp& a, const DiffOp& b) {
  std::vector<Poly> byPower(a.order + b.order + 1, Poly::zero());
  for (int k = 0; k <= a.order; ++k) {
    const Poly& ak = a.coeffOfPower(k);
    if (ak.isZero()) continue;
    for (int l = 0; l <= b.order; ++l) {
      Poly bjl = b.coeffOfPower(l);  // theta^j applied below
      for (int j = 0; j <= k; ++j) {
        if (!bjl.isZero())
          byPower[k - j + l] = byPower[k - j + l] + binomial(k, j) * (ak * bjl);
        bjl = theta(bjl);
      }
    }
  }
  std::vector<Poly> logCoeffs(byPower.rbegin(), byPower.rend());
  return normalizeDiffOp(std::move(logCoeffs));
}

DiffeOp composeDiffe(const DiffeOp& a, const DiffeOp& b) {
  std::vector<Poly> byPower(a.order + b.order + 1, Poly::zero());
  for (int k = 0; k <= a.order; ++k) {
    const Poly& ak = a.coeffOfPower(k);
    if (ak.isZero()) continue;
    for (int l = 0; l <= b.order; ++l)
      byPower[k + l] = byPower[k + l] + ak * shiftBy(b.coeffOfPower(l), double(k));
  }
  std::vector<Poly> coeffs(byPower.rbegin(), byPower.rend());
  return normalizeDiffeOp(std::move(coeffs));
}

RatDiffOp composeRat(const RatDiffOp& a, const RatDiffOp& b) {
  RatDiffOp out;
  out.coeffs.assign(a.order() + b.order() + 1, RationalFn());
  for (int k = 0; k <= a.order(); ++k) {
    if (a.coeffs[k].isZero()) continue;
    for (int l = 0; l <= b.order(); ++l) {
      RationalFn bj = b.coeffs[l];
      for (int j = 0; j <= k; ++j) {
        if (!bj.isZero())
          out.coeffs[k - j + l] = out.coeffs[k - j + l] + binomial(k, j) * (a.coeffs[k] * bj);
        bj = derivative(bj);
      }
    }
  }
  return out;
}

RatDiffeOp composeRat(const RatDiffeOp& a, const RatDiffeOp& b) {
  RatDiffeOp out;
  out.coeffs.assign(a.order() + b.order() + 1, RationalFn());
  for (int k = 0; k <= a.order(); ++k) {
    if (a.coeffs[k].isZero()) continue;
    for (int l = 0; l <= b.order(); ++l)
      if (!b.coeffs[l].isZero())
        out.coeffs[k + l] = out.coeffs[k + l] + a.coeffs[k] * shiftBy(b.coeffs[l], double(k));
  }
  return out;
}

RatDiffOp diffFactor(const RationalFn& r) {
  RatDiffOp d;
  d.coeffs = {-r, RationalFn::fromPoly(Poly::one())};
  return d;
}

RatDiffeOp diffeFactor(const RationalFn& g) {
  RatDiffeOp d;
  d.coeffs = {-g, RationalFn::fromPoly(Poly::one())};
  return d;
}

RatDiffOp composeFirstOrderFactorsDiff(const std::vector<RationalFn>& rs) {
  RatDiffOp acc;
  acc.coeffs = {RationalFn::fromPoly(Poly::one())};
  for (const RationalFn& r : rs) acc = composeRat(acc, diffFactor(r));
  return acc;
}

RatDiffeOp composeFirstOrderFactorsDiffe(const std::vector<RationalFn>& gs) {
  RatDiffeOp acc;
  acc.coeffs = {RationalFn::fromPoly(Poly::one())};
  for (const RationalFn& g : gs) acc = composeRat(acc, diffeFactor(g));
  return acc;
}

QuasiPolySumX applyRat(const RatDiffOp& d, const QuasiRationalX& f) {
  std::vector<RationalFn> parts(d.order() + 1);
  parts[0] = f.part;
  const RationalFn invX(Poly::one(), Poly::var());
  for (int k = 1; k <= d.order(); ++k)
    parts[k] = (f.exponent * invX) * parts[k - 1] + derivative(parts[k - 1]);
  RationalFn acc;
  for (int k = 0; k <= d.order(); ++k) acc = acc + d.coeffs[k] * parts[k];
  QuasiPolySumX out;
  out.add(f.exponent, acc);
  return out;
}

QuasiRationalU applyRat(const RatDiffeOp& d, const QuasiRationalU& f) {
  RationalFn acc;
  for (int k = 0; k <= d.order(); ++k)
    acc = acc + ipow(f.base.value, k) * (d.coeffs[k] * shiftBy(f.part, double(k)));
  return {f.base, acc};
}

RatDiffOp formalConjugate(const RatDiffOp& d) {
  RatDiffOp out;
  out.coeffs.assign(d.order() + 1, RationalFn());
  for (int k = 0; k <= d.order(); ++k) {
    RationalFn aj = d.coeffs[k];
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int j = 0; j <= k; ++j) {
      if (!aj.isZero())
        out.coeffs[k - j] = out.coeffs[k - j] + (sign * binomial(k, j)) * aj;
      aj = derivative(aj);
    }
  }
  return out;
}

DiffOp clearToDiffOp(const Poly& clear, const RatDiffOp& d, double relTol,
                     const std::string& what) {
  std::vector<Poly> stdCoeffs(d.order() + 1, Poly::zero());
  for (int k = 0; k <= d.order(); ++k) {
    if (d.coeffs[k].isZero()) continue;
    const Poly pk = polyDivideExact(clear * d.coeffs[k].num(), d.coeffs[k].den(), relTol, what);
    stdCoeffs[k] = polyDivideExact(pk, Poly::monomial(k), relTol, what);
  }
  return stdToLog(stdCoeffs);
}

DiffeOp clearToDiffeOp(const Poly& clear, const RatDiffeOp& d, double relTol,
                       const std::string& what) {
  std::vector<Poly> byPower(d.order() + 1, Poly::zero());
  for (int k = 0; k <= d.order(); ++k) {
    if (d.coeffs[k].isZero()) continue;
    byPower[k] = polyDivideExact(clear * d.coeffs[k].num(), d.coeffs[k].den(), relTol, what);
  }
  std::vector<Poly> coeffs(byPower.rbegin(), byPower.rend());
  return normalizeDiffeOp(std::move(coeffs));
}

double annihilationResidual(const DiffOp& d, Complex lambda, const Poly& p) {
  std::vector<Poly> parts(d.order + 1);
  parts[0] = p;
  for (int j = 1; j <= d.order; ++j)
    parts[j] = lambda * parts[j - 1] + theta(parts[j - 1]);
  Poly acc;
  double scale = 0.0;
  for (int i = 0; i <= d.order; ++i) {
    const Poly term = d.logCoeffs[i] * parts[d.order - i];
    scale = std::max(scale, term.maxAbsCoeff());
    acc = acc + term;
  }
  return polyResidualNorm(acc, scale);
}

double annihilationResidual(const DiffeOp& d, const BranchedBase& z, const Poly& q) {
  Poly acc;
  double scale = 0.0;
  for (int i = 0; i <= d.order; ++i) {
    const int k = d.order - i;
    const Poly term = ipow(z.value, k) * (d.coeffs[i] * shiftBy(q, double(k)));
    scale = std::max(scale, term.maxAbsCoeff());
    acc = acc + term;
  }
  return polyResidualNorm(acc, scale);
}

}  // namespace bispec
