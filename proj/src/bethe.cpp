#include "bispec/bethe.hpp"

#include "bispec/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace bispec {

namespace {

constexpr double kBig = 1e30;

Complex ipow(Complex z, int k) {
  Complex r(1.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

bool distinctModIntegers(const std::vector<Complex>& lambda, double delta) {
  for (size_t i = 0; i < lambda.size(); ++i)
    for (size_t j = i + 1; j < lambda.size(); ++j) {
      const Complex d = lambda[i] - lambda[j];
      if (std::abs(d.imag()) > delta) continue;
      if (std::abs(d.real() - std::round(d.real())) <= delta) return false;
    }
  return true;
}

}  // namespace

std::vector<int> GaudinProblem::levelSizes() const {
  const int N = bigN();
  std::vector<int> nb(std::max(0, N - 1), 0);
  for (int i = 0; i < N - 1; ++i)
    for (int k = i + 1; k < N; ++k) nb[i] += n[k];
  return nb;
}

void GaudinProblem::validate() const {
  if (n.size() != lambda.size()) throw Error("GaudinProblem: n/lambda size mismatch");
  if (m.size() != z.size()) throw Error("GaudinProblem: m/z size mismatch");
  if (std::accumulate(n.begin(), n.end(), 0) != std::accumulate(m.begin(), m.end(), 0))
    throw Error("GaudinProblem: sum n != sum m");
  if (!distinctModIntegers(lambda, kDelta))
    throw Error("GaudinProblem: lambda congruent mod 1");
  for (size_t a = 0; a < z.size(); ++a)
    for (size_t b = a + 1; b < z.size(); ++b)
      if (std::abs(z[a].value - z[b].value) <= kDelta) throw Error("GaudinProblem: z collision");
}

std::vector<int> XXXProblem::levelSizes() const {
  const int M = bigM();
  std::vector<int> mb(std::max(0, M - 1), 0);
  for (int a = 0; a < M - 1; ++a)
    for (int k = a + 1; k < M; ++k) mb[a] += m[k];
  return mb;
}

bool XXXProblem::separating() const {
  const auto mb = levelSizes();
  std::vector<int> c(mb.size(), 0);
  while (true) {
    int pos = 0;
    while (pos < static_cast<int>(c.size())) {
      if (c[pos] < mb[pos]) {
        ++c[pos];
        break;
      }
      c[pos] = 0;
      ++pos;
    }
    if (pos == static_cast<int>(c.size())) break;
    Complex prod(1.0);
    for (size_t a = 0; a < c.size(); ++a)
      for (int k = 0; k < c[a]; ++k) prod *= z[a + 1].value / z[a].value;
    if (std::abs(prod - Complex(1.0)) <= 10 * kDelta) return false;
  }
  return true;
}

void XXXProblem::validate() const {
  if (m.size() != z.size()) throw Error("XXXProblem: m/z size mismatch");
  if (n.size() != lambda.size()) throw Error("XXXProblem: n/lambda size mismatch");
  if (std::accumulate(n.begin(), n.end(), 0) != std::accumulate(m.begin(), m.end(), 0))
    throw Error("XXXProblem: sum m != sum n");
}

int LeveledPoint::count() const {
  int c = 0;
  for (const auto& l : levels) c += static_cast<int>(l.size());
  return c;
}

VectorXcd LeveledPoint::flat() const {
  VectorXcd v(count());
  int k = 0;
  for (const auto& l : levels)
    for (Complex t : l) v(k++) = t;
  return v;
}

LeveledPoint LeveledPoint::fromFlat(const VectorXcd& v, const std::vector<int>& sizes) {
  LeveledPoint p;
  int k = 0;
  for (int s : sizes) {
    std::vector<Complex> level(s);
    for (int j = 0; j < s; ++j) level[j] = v(k++);
    p.levels.push_back(std::move(level));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Master function and the Gaudin system

Complex masterFunctionLog(const LeveledPoint& t, const GaudinProblem& p) {
  if (!gaudinAdmissible(t, p)) throw Error("masterFunctionLog: inadmissible point");
  const int M = p.bigM();
  Complex acc(0.0);
  for (int a = 0; a < M; ++a)
    acc += double(p.m[a]) * (p.lambda[0] + 0.5 * double(p.m[a])) * p.z[a].log();
  for (int a = 0; a < M; ++a)
    for (int b = a + 1; b < M; ++b)
      acc += double(p.m[a] * p.m[b]) * std::log(p.z[a].value - p.z[b].value);
  const int L = static_cast<int>(t.levels.size());
  for (int l = 0; l < L; ++l) {
    const Complex ex = p.lambda[l + 1] - p.lambda[l] + 1.0;
    for (Complex tj : t.levels[l]) acc += ex * std::log(tj);
  }
  if (L > 0)
    for (int a = 0; a < M; ++a)
      for (Complex tj : t.levels[0]) acc -= double(p.m[a]) * std::log(tj - p.z[a].value);
  for (int l = 0; l < L; ++l)
    for (size_t j = 0; j < t.levels[l].size(); ++j)
      for (size_t k = j + 1; k < t.levels[l].size(); ++k)
        acc += 2.0 * std::log(t.levels[l][j] - t.levels[l][k]);
  for (int l = 0; l + 1 < L; ++l)
    for (Complex a : t.levels[l])
      for (Complex b : t.levels[l + 1]) acc -= std::log(a - b);
  return acc;
}

Complex masterLogZDerivative(const LeveledPoint& t, const GaudinProblem& p, int a) {
  Complex acc = double(p.m[a]) * (p.lambda[0] + 0.5 * double(p.m[a]));
  for (int b = 0; b < p.bigM(); ++b)
    if (b != a)
      acc += double(p.m[a] * p.m[b]) * p.z[a].value / (p.z[a].value - p.z[b].value);
  if (!t.levels.empty())
    for (Complex tj : t.levels[0])
      acc += double(p.m[a]) * p.z[a].value / (tj - p.z[a].value);
  return acc;
}

VectorXcd gaudinResidual(const LeveledPoint& t, const GaudinProblem& p) {
  const int L = static_cast<int>(t.levels.size());
  VectorXcd out(t.count());
  int row = 0;
  for (int l = 0; l < L; ++l) {
    for (size_t j = 0; j < t.levels[l].size(); ++j) {
      const Complex tj = t.levels[l][j];
      Complex acc(0.0);
      bool blown = std::abs(tj) < 1e-14;
      if (!blown) acc += (p.lambda[l] - p.lambda[l + 1] - 1.0) / tj;
      if (l == 0)
        for (int a = 0; a < p.bigM(); ++a) {
          const Complex d = tj - p.z[a].value;
          if (std::abs(d) < 1e-14) blown = true;
          else acc += double(p.m[a]) / d;
        }
      for (size_t k = 0; k < t.levels[l].size(); ++k) {
        if (k == j) continue;
        const Complex d = tj - t.levels[l][k];
        if (std::abs(d) < 1e-14) blown = true;
        else acc -= 2.0 / d;
      }
      if (l > 0)
        for (Complex s : t.levels[l - 1]) {
          const Complex d = tj - s;
          if (std::abs(d) < 1e-14) blown = true;
          else acc += 1.0 / d;
        }
      if (l + 1 < L)
        for (Complex s : t.levels[l + 1]) {
          const Complex d = tj - s;
          if (std::abs(d) < 1e-14) blown = true;
          else acc += 1.0 / d;
        }
      out(row++) = blown ? Complex(kBig) : acc;
    }
  }
  return out;
}

MatrixXcd gaudinJacobian(const LeveledPoint& t, const GaudinProblem& p) {
  const int L = static_cast<int>(t.levels.size());
  const int nv = t.count();
  MatrixXcd jac = MatrixXcd::Zero(nv, nv);
  std::vector<int> offset(L + 1, 0);
  for (int l = 0; l < L; ++l) offset[l + 1] = offset[l] + static_cast<int>(t.levels[l].size());
  for (int l = 0; l < L; ++l) {
    for (size_t j = 0; j < t.levels[l].size(); ++j) {
      const int row = offset[l] + static_cast<int>(j);
      const Complex tj = t.levels[l][j];
      Complex diag = -(p.lambda[l] - p.lambda[l + 1] - 1.0) / (tj * tj);
      if (l == 0)
        for (int a = 0; a < p.bigM(); ++a) {
          const Complex d = tj - p.z[a].value;
          diag -= double(p.m[a]) / (d * d);
        }
      for (size_t k = 0; k < t.levels[l].size(); ++k) {
        if (k == j) continue;
        const Complex d = tj - t.levels[l][k];
        diag += 2.0 / (d * d);
        jac(row, offset[l] + static_cast<int>(k)) = -2.0 / (d * d);
      }
      if (l > 0)
        for (size_t k = 0; k < t.levels[l - 1].size(); ++k) {
          const Complex d = tj - t.levels[l - 1][k];
          diag -= 1.0 / (d * d);
          jac(row, offset[l - 1] + static_cast<int>(k)) = 1.0 / (d * d);
        }
      if (l + 1 < L)
        for (size_t k = 0; k < t.levels[l + 1].size(); ++k) {
          const Complex d = tj - t.levels[l + 1][k];
          diag -= 1.0 / (d * d);
          jac(row, offset[l + 1] + static_cast<int>(k)) = 1.0 / (d * d);
        }
      jac(row, row) = diag;
    }
  }
  return jac;
}

bool gaudinAdmissible(const LeveledPoint& t, const GaudinProblem& p, double delta) {
  const int L = static_cast<int>(t.levels.size());
  for (int l = 0; l < L; ++l) {
    for (size_t j = 0; j < t.levels[l].size(); ++j) {
      const Complex tj = t.levels[l][j];
      if (std::abs(tj) <= delta) return false;  // y_l(0) != 0
      for (size_t k = j + 1; k < t.levels[l].size(); ++k)
        if (std::abs(tj - t.levels[l][k]) <= delta) return false;  // simple roots
      if (l + 1 < L)
        for (Complex s : t.levels[l + 1])
          if (std::abs(tj - s) <= delta) return false;  // no shared adjacent roots
    }
  }
  if (L > 0)
    for (int a = 0; a < p.bigM(); ++a)
      if (p.m[a] > 0)
        for (Complex tj : t.levels[0])
          if (std::abs(tj - p.z[a].value) <= delta) return false;  // y_1(z_a) != 0
  return true;
}

// ---------------------------------------------------------------------------
// XXX system, denominator-cleared

namespace {

struct LinearFactor {
  Complex value;
  int v1 = -1, v2 = -1;  // residual depends on vars as value = base + t[v1] - t[v2]
};

struct ClearedEquation {
  Complex zNum, zDen;
  std::vector<LinearFactor> num, den;
  double scale = 1.0;
};

// Equations of the discrete system for the type lambda+1, level l (0-based),
// variable index b.
std::vector<ClearedEquation> xxxEquations(const LeveledPoint& t, const XXXProblem& p) {
  const int L = static_cast<int>(t.levels.size());
  std::vector<int> offset(L + 1, 0);
  for (int l = 0; l < L; ++l) offset[l + 1] = offset[l] + static_cast<int>(t.levels[l].size());
  std::vector<ClearedEquation> eqs;
  for (int l = 0; l < L; ++l) {
    for (size_t b = 0; b < t.levels[l].size(); ++b) {
      const int vb = offset[l] + static_cast<int>(b);
      const Complex tb = t.levels[l][b];
      ClearedEquation eq;
      eq.zNum = p.z[l].value;
      eq.zDen = p.z[l + 1].value;
      if (l == 0) {
        for (size_t i = 0; i < p.lambda.size(); ++i) {
          const Complex lam = p.lambda[i] + 1.0;  // type lambda
          eq.num.push_back({tb - lam, vb, -1});
          eq.den.push_back({tb - lam - double(p.n[i]), vb, -1});
        }
      } else {
        for (size_t k = 0; k < t.levels[l - 1].size(); ++k) {
          const int vk = offset[l - 1] + static_cast<int>(k);
          eq.num.push_back({tb - t.levels[l - 1][k], vb, vk});
          eq.den.push_back({tb - t.levels[l - 1][k] - 1.0, vb, vk});
        }
      }
      for (size_t k = 0; k < t.levels[l].size(); ++k) {
        if (k == b) continue;
        const int vk = offset[l] + static_cast<int>(k);
        eq.num.push_back({tb - t.levels[l][k] - 1.0, vb, vk});
        eq.den.push_back({tb - t.levels[l][k] + 1.0, vb, vk});
      }
      if (l + 1 < L) {
        for (size_t k = 0; k < t.levels[l + 1].size(); ++k) {
          const int vk = offset[l + 1] + static_cast<int>(k);
          eq.num.push_back({tb - t.levels[l + 1][k] + 1.0, vb, vk});
          eq.den.push_back({tb - t.levels[l + 1][k], vb, vk});
        }
      }
      double scale = std::abs(eq.zNum) + std::abs(eq.zDen);
      for (size_t f = 0; f < eq.num.size(); ++f)
        scale *= std::max({std::abs(eq.num[f].value), std::abs(eq.den[f].value), kDelta});
      eq.scale = std::max(scale, 1e-300);
      eqs.push_back(std::move(eq));
    }
  }
  return eqs;
}

}  // namespace

VectorXcd xxxResidual(const LeveledPoint& t, const XXXProblem& p) {
  const auto eqs = xxxEquations(t, p);
  VectorXcd out(eqs.size());
  for (size_t r = 0; r < eqs.size(); ++r) {
    Complex num = eqs[r].zNum, den = eqs[r].zDen;
    for (const auto& f : eqs[r].num) num *= f.value;
    for (const auto& f : eqs[r].den) den *= f.value;
    out(r) = (num - den) / eqs[r].scale;
  }
  return out;
}

MatrixXcd xxxJacobian(const LeveledPoint& t, const XXXProblem& p) {
  const auto eqs = xxxEquations(t, p);
  const int nv = t.count();
  MatrixXcd jac = MatrixXcd::Zero(eqs.size(), nv);
  for (size_t r = 0; r < eqs.size(); ++r) {
    for (int side = 0; side < 2; ++side) {
      const auto& factors = side == 0 ? eqs[r].num : eqs[r].den;
      const Complex zc = side == 0 ? eqs[r].zNum : eqs[r].zDen;
      const double sign = side == 0 ? 1.0 : -1.0;
      for (size_t f = 0; f < factors.size(); ++f) {
        Complex prod = zc;
        for (size_t g = 0; g < factors.size(); ++g)
          if (g != f) prod *= factors[g].value;
        if (factors[f].v1 >= 0) jac(r, factors[f].v1) += sign * prod / eqs[r].scale;
        if (factors[f].v2 >= 0) jac(r, factors[f].v2) -= sign * prod / eqs[r].scale;
      }
    }
  }
  return jac;
}

bool xxxAdmissible(const LeveledPoint& t, const XXXProblem& p, double delta) {
  const int L = static_cast<int>(t.levels.size());
  for (int l = 0; l < L; ++l) {
    for (size_t b = 0; b < t.levels[l].size(); ++b) {
      const Complex tb = t.levels[l][b];
      for (size_t k = 0; k < t.levels[l].size(); ++k) {
        if (k == b) continue;
        if (std::abs(tb - t.levels[l][k]) <= delta) return false;
        if (std::abs(tb - t.levels[l][k] - 1.0) <= delta) return false;
      }
      if (l + 1 < L)
        for (Complex s : t.levels[l + 1]) {
          if (std::abs(tb - s) <= delta) return false;
          if (std::abs(tb - s + 1.0) <= delta) return false;
        }
    }
  }
  if (L > 0)
    for (size_t i = 0; i < p.lambda.size(); ++i)
      for (int r = 0; r <= p.n[i]; ++r)
        for (Complex tb : t.levels[0])
          if (std::abs(tb - (p.lambda[i] + 1.0 + double(r))) <= delta) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Multistart damped Newton

namespace {

using ResidualFn = std::function<VectorXcd(const LeveledPoint&)>;
using JacobianFn = std::function<MatrixXcd(const LeveledPoint&)>;

std::vector<Complex> canonical(const std::vector<Complex>& in) {
  std::vector<Complex> v = in;
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

BetheOrbit makeOrbit(const LeveledPoint& t, double residual, bool admissible) {
  BetheOrbit o;
  for (const auto& l : t.levels) o.levels.push_back(canonical(l));
  for (const auto& l : o.levels) o.yTuple.push_back(Poly::fromRoots(l));
  o.residualNorm = residual;
  o.admissible = admissible;
  return o;
}

bool orbitListed(const std::vector<BetheOrbit>& list, const BetheOrbit& o, double delta) {
  for (const auto& e : list)
    if (sameOrbit(e, o, delta)) return true;
  return false;
}

std::vector<BetheOrbit> multistartSolve(const std::vector<int>& sizes, Complex center,
                                        double spread, const ResidualFn& fres,
                                        const JacobianFn& fjac,
                                        const std::function<bool(const LeveledPoint&)>& adm,
                                        int restarts, const SolveConfig& cfg) {
  std::vector<BetheOrbit> orbits;
  const int nv = std::accumulate(sizes.begin(), sizes.end(), 0);
  if (nv == 0) {
    LeveledPoint empty;
    for (int s : sizes) empty.levels.push_back({});
    orbits.push_back(makeOrbit(empty, 0.0, true));
    return orbits;
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < restarts; ++r) {
    VectorXcd x(nv);
    for (int k = 0; k < nv; ++k) x(k) = center + spread * Complex(gauss(rng), gauss(rng));
    double fnorm = kBig;
    for (int it = 0; it < cfg.maxIter; ++it) {
      const LeveledPoint pt = LeveledPoint::fromFlat(x, sizes);
      const VectorXcd f = fres(pt);
      fnorm = f.cwiseAbs().maxCoeff();
      if (fnorm >= kBig) break;
      if (fnorm < 1e-13) break;
      const MatrixXcd j = fjac(pt);
      const VectorXcd step = j.partialPivLu().solve(-f);
      if (!step.allFinite()) break;
      double alpha = 1.0;
      bool moved = false;
      for (int h = 0; h < 40; ++h) {
        const VectorXcd cand = x + alpha * step;
        const double cnorm =
            fres(LeveledPoint::fromFlat(cand, sizes)).cwiseAbs().maxCoeff();
        if (cnorm < fnorm * (1.0 - 1e-4 * alpha)) {
          x = cand;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    const LeveledPoint pt = LeveledPoint::fromFlat(x, sizes);
    const double res = fres(pt).cwiseAbs().maxCoeff();
    if (res < cfg.tolResidual && adm(pt)) {
      const BetheOrbit orbit = makeOrbit(pt, res, true);
      if (!orbitListed(orbits, orbit, kDelta)) orbits.push_back(orbit);
    }
  }
  std::sort(orbits.begin(), orbits.end(), [](const BetheOrbit& a, const BetheOrbit& b) {
    for (size_t l = 0; l < a.levels.size(); ++l)
      for (size_t j = 0; j < std::min(a.levels[l].size(), b.levels[l].size()); ++j) {
        const Complex x = a.levels[l][j], y = b.levels[l][j];
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
      }
    return false;
  });
  return orbits;
}

}  // namespace

std::vector<BetheOrbit> gaudinSolve(const GaudinProblem& p, const SolveConfig& cfg) {
  p.validate();
  const auto sizes = p.levelSizes();
  const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  if (total > 8) throw Error("gaudinSolve: desk-scale exceeded");
  const auto d = std::max<std::int64_t>(1, weightDim(p.m, p.n));
  const int restarts = cfg.restarts > 0 ? cfg.restarts : static_cast<int>(200 * d);
  Complex center(0.0);
  for (const auto& z : p.z) center += z.value;
  center /= double(std::max<size_t>(1, p.z.size()));
  double spread = 1.0;
  for (size_t a = 0; a < p.z.size(); ++a)
    for (size_t b = a + 1; b < p.z.size(); ++b)
      spread = std::max(spread, 2.0 * std::abs(p.z[a].value - p.z[b].value));
  return multistartSolve(
      sizes, center, spread, [&](const LeveledPoint& t) { return gaudinResidual(t, p); },
      [&](const LeveledPoint& t) { return gaudinJacobian(t, p); },
      [&](const LeveledPoint& t) { return gaudinAdmissible(t, p); }, restarts, cfg);
}

std::vector<BetheOrbit> xxxSolve(const XXXProblem& p, const SolveConfig& cfg) {
  p.validate();
  const auto sizes = p.levelSizes();
  const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  if (total > 8) throw Error("xxxSolve: desk-scale exceeded");
  const auto d = std::max<std::int64_t>(1, weightDim(p.m, p.n));
  const int restarts = cfg.restarts > 0 ? cfg.restarts : static_cast<int>(200 * d);
  Complex center(0.0);
  for (Complex l : p.lambda) center += l + 1.0;
  center /= double(std::max<size_t>(1, p.lambda.size()));
  double spread = 1.0;
  for (size_t i = 0; i < p.lambda.size(); ++i) {
    spread = std::max(spread, 1.0 + double(p.n[i]));
    for (size_t j = i + 1; j < p.lambda.size(); ++j)
      spread = std::max(spread, 2.0 * std::abs(p.lambda[i] - p.lambda[j]));
  }
  return multistartSolve(
      sizes, center, spread, [&](const LeveledPoint& t) { return xxxResidual(t, p); },
      [&](const LeveledPoint& t) { return xxxJacobian(t, p); },
      [&](const LeveledPoint& t) { return xxxAdmissible(t, p); }, restarts, cfg);
}

// ---------------------------------------------------------------------------
// Tuple <-> operator

namespace {

void checkGaudinTuple(const std::vector<Poly>& y, const GaudinProblem& p) {
  for (size_t l = 0; l < y.size(); ++l) {
    if (std::abs(evalAt(y[l], Complex(0.0))) <= kDelta * std::max(1.0, y[l].maxAbsCoeff()))
      throw Error("inadmissible tuple: y_i(0) = 0");
    if (y[l].degree() >= 1) {
      const auto roots = polyRoots(y[l]);
      for (size_t a = 0; a < roots.size(); ++a)
        for (size_t b = a + 1; b < roots.size(); ++b)
          if (std::abs(roots[a] - roots[b]) <= kDelta)
            throw Error("inadmissible tuple: multiple root");
      if (l + 1 < y.size() && y[l + 1].degree() >= 1)
        for (Complex r : roots)
          if (rootMultiplicity(y[l + 1], r) > 0)
            throw Error("inadmissible tuple: shared adjacent root");
    }
  }
  if (!y.empty())
    for (int a = 0; a < p.bigM(); ++a)
      if (p.m[a] > 0 &&
          std::abs(evalAt(y[0], p.z[a].value)) <= kDelta * std::max(1.0, y[0].maxAbsCoeff()))
        throw Error("inadmissible tuple: y_1(z_a) = 0");
}

}  // namespace

RatDiffOp tupleToOperatorGaudin(const std::vector<Poly>& y, const GaudinProblem& p) {
  const int N = p.bigN();
  if (static_cast<int>(y.size()) != N - 1) throw Error("tupleToOperatorGaudin: tuple size");
  checkGaudinTuple(y, p);
  Poly y0 = Poly::one();
  for (int a = 0; a < p.bigM(); ++a)
    for (int k = 0; k < p.m[a]; ++k) y0 = y0 * Poly({-p.z[a].value, Complex(1.0)});
  auto yAt = [&](int i) -> Poly {  // y_0 .. y_N with y_N = 1
    if (i == 0) return y0;
    if (i == N) return Poly::one();
    return y[i - 1];
  };
  std::vector<RationalFn> factors;
  for (int i = 1; i <= N; ++i) {
    const Complex e = p.lambda[i - 1] - double(N) + double(i);
    const RationalFn ratio(yAt(i - 1), yAt(i));
    factors.push_back(logDerivative(e, ratio));
  }
  return composeFirstOrderFactorsDiff(factors);
}

DiffOp specialOperatorFromTupleGaudin(const std::vector<Poly>& y, const GaudinProblem& p) {
  const RatDiffOp d = tupleToOperatorGaudin(y, p);
  Poly clear = Poly::monomial(p.bigN());
  for (const auto& z : p.z) clear = clear * Poly({-z.value, Complex(1.0)});
  return clearToDiffOp(clear, d, 1e-7, "inadmissible tuple");
}

std::vector<Poly> spaceToTupleGaudin(const QuasiPolySpace& v) {
  const auto b = v.basis();
  const int N = static_cast<int>(b.size());
  std::vector<Poly> y;
  for (int i = 1; i <= N - 1; ++i) {
    if (i == N - 1) {
      y.push_back(monic(b[N - 1].second));
    } else {
      std::vector<std::pair<Complex, Poly>> tail(b.begin() + i, b.end());
      y.push_back(monic(wronskianX(tail).part));
    }
  }
  return y;
}

RatDiffeOp tupleToOperatorXXX(const std::vector<Poly>& y, const XXXProblem& p) {
  const int M = p.bigM();
  if (static_cast<int>(y.size()) != M - 1) throw Error("tupleToOperatorXXX: tuple size");
  auto yAt = [&](int a) -> Poly {  // y_1 .. y_{M-1}, padded by 1 at both ends
    if (a <= 0 || a >= M) return Poly::one();
    return y[a - 1];
  };
  std::vector<RationalFn> factors;
  for (int a = 1; a <= M; ++a) {
    RationalFn g;
    if (a == 1) {
      g = RationalFn(p.z[0].value * yAt(1), shiftByOne(yAt(1)));
      for (size_t i = 0; i < p.lambda.size(); ++i) {
        // type lambda+1: (u - lambda'_i + 1)/(u - lambda'_i - n_i + 1)
        const Complex lam = p.lambda[i] + 1.0;
        g = g * RationalFn(Poly({-(lam - 1.0), Complex(1.0)}),
                           Poly({-(lam + double(p.n[i]) - 1.0), Complex(1.0)}));
      }
    } else if (a < M) {
      g = RationalFn(p.z[a - 1].value * (shiftByOne(yAt(a - 1)) * yAt(a)),
                     yAt(a - 1) * shiftByOne(yAt(a)));
    } else {
      g = RationalFn(p.z[M - 1].value * shiftByOne(yAt(M - 1)), yAt(M - 1));
    }
    factors.push_back(g);
  }
  return composeFirstOrderFactorsDiffe(factors);
}

std::vector<Poly> spaceToTupleXXX(const QuasiExpSpace& u) {
  const auto b = u.basis();
  const int M = static_cast<int>(b.size());
  std::vector<Poly> y;
  for (int a = 1; a <= M - 1; ++a) {
    if (a == M - 1) {
      y.push_back(monic(b[M - 1].second));
    } else {
      std::vector<std::pair<BranchedBase, Poly>> tail(b.begin() + a, b.end());
      y.push_back(monic(discreteWronskianU(tail).part));
    }
  }
  return y;
}

// ---------------------------------------------------------------------------
// Orbit -> spaces -> correspondence

QuasiPolySpace spaceFromGaudinOrbit(const BetheOrbit& orbit, const GaudinProblem& p) {
  const DiffOp d = specialOperatorFromTupleGaudin(orbit.yTuple, p);
  QuasiPolySpace v;
  for (int i = 0; i < p.bigN(); ++i) {
    const auto ker = quasiPolyKernel(d, p.lambda[i], p.n[i]);
    Poly pick;
    for (const auto& q : ker)
      if (q.degree() == p.n[i] &&
          std::abs(evalAt(q, Complex(0.0))) > kDelta * std::max(1.0, q.maxAbsCoeff()))
        pick = q;
    if (pick.isZero()) throw Error("correspondence failure: no quasi-polynomial kernel");
    v.groups.push_back({p.lambda[i], {monic(pick)}});
  }
  return v;
}

QuasiExpSpace dualSpaceFromGaudinOrbit(const BetheOrbit& orbit, const GaudinProblem& p) {
  const DiffOp d = specialOperatorFromTupleGaudin(orbit.yTuple, p);
  const DiffeOp dual = dualizeDiffToDiffe(d);
  QuasiExpSpace u;
  for (int a = 0; a < p.bigM(); ++a) {
    const auto ker = quasiExpKernel(dual, p.z[a], p.m[a]);
    Poly pick;
    for (const auto& q : ker)
      if (q.degree() == p.m[a]) pick = q;
    if (pick.isZero()) throw Error("correspondence failure: no quasi-exponential kernel");
    u.groups.push_back({p.z[a], {monic(pick)}});
  }
  return u;
}

XXXProblem xxxFromGaudin(const GaudinProblem& p) {
  XXXProblem x;
  x.m = p.m;
  x.z = p.z;
  x.n = p.n;
  x.lambda = p.lambda;
  return x;
}

BetheOrbit correspond(const BetheOrbit& gaudinOrbit, const GaudinProblem& p) {
  const QuasiExpSpace u = dualSpaceFromGaudinOrbit(gaudinOrbit, p);
  const auto y = spaceToTupleXXX(u);
  const XXXProblem xp = xxxFromGaudin(p);
  LeveledPoint t;
  for (const auto& yl : y)
    t.levels.push_back(yl.degree() >= 1 ? polyRoots(yl) : std::vector<Complex>{});
  const double res = t.count() == 0 ? 0.0 : xxxResidual(t, xp).cwiseAbs().maxCoeff();
  BetheOrbit out;
  for (const auto& l : t.levels) out.levels.push_back(canonicalRoots(l));
  out.yTuple = y;
  out.residualNorm = res;
  out.admissible = xxxAdmissible(t, xp);
  return out;
}

// ---------------------------------------------------------------------------
// Tridiagonal 2x2 route

std::vector<Tridiagonal22Result> tridiagonal22(const GaudinProblem& p) {
  if (p.bigN() != 2 || p.bigM() != 2) throw Error("tridiagonal22: needs N = M = 2");
  const int n1 = p.n[0], n2 = p.n[1], m1 = p.m[0], m2 = p.m[1];
  const Complex z1 = p.z[0].value, z2 = p.z[1].value;
  const Complex l1 = p.lambda[0], l2 = p.lambda[1];
  const Complex pref = (l1 - l2 + double(n1)) * (z1 - z2);
  if (std::abs(pref) <= kDelta) throw Error("non-generic parameters");

  const int alpha = std::max(0, n2 - m1);
  const int beta = std::min(m2, n2);
  const int dim = beta - alpha + 1;

  auto lower = [&](int i) { return z1 * double(i) * double(m1 - n2 + i); };
  auto upper = [&](int i) { return z2 * double(m2 - i) * double(n2 - i); };
  auto diag = [&](int i) {
    return (z1 + z2) * double(i * i) +
           (z2 * double(m1) - z1 * double(m2) - 2.0 * z2 * double(n2) - (l1 - l2) * (z1 - z2)) *
               double(i) +
           z2 * double(m2) * double(n2);
  };

  MatrixXcd tri = MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const int i = alpha + k;
    tri(k, k) = diag(i);
    if (k > 0) tri(k, k - 1) = lower(i);
    if (k + 1 < dim) tri(k, k + 1) = upper(i);
  }
  Eigen::ComplexEigenSolver<MatrixXcd> es(tri);
  if (es.info() != Eigen::Success) throw Error("tridiagonal22: eigensolver failure");

  std::vector<Tridiagonal22Result> out;
  for (int k = 0; k < dim; ++k) {
    Tridiagonal22Result r;
    const Complex mu = es.eigenvalues()(k);
    r.phi11 = mu / pref;
    r.cWindow = es.eigenvectors().col(k);
    // extend c to 0..n_2 using the remaining recurrence rows
    std::vector<Complex> c(n2 + 1, Complex(0.0));
    for (int i = alpha; i <= beta; ++i) c[i] = r.cWindow(i - alpha);
    if (alpha > 0) {
      MatrixXcd a = MatrixXcd::Zero(alpha, alpha);
      VectorXcd rhs = VectorXcd::Zero(alpha);
      for (int i = 0; i < alpha; ++i) {
        a(i, i) = diag(i) - mu;
        if (i > 0) a(i, i - 1) = lower(i);
        if (i + 1 < alpha) a(i, i + 1) = upper(i);
        else if (i + 1 == alpha) rhs(i) -= upper(i) * c[alpha];
      }
      const VectorXcd sol = a.partialPivLu().solve(rhs);
      for (int i = 0; i < alpha; ++i) c[i] = sol(i);
    }
    if (beta < n2) {
      const int cnt = n2 - beta;
      MatrixXcd a = MatrixXcd::Zero(cnt, cnt);
      VectorXcd rhs = VectorXcd::Zero(cnt);
      for (int idx = 0; idx < cnt; ++idx) {
        const int i = beta + 1 + idx;
        a(idx, idx) = diag(i) - mu;
        if (idx > 0) a(idx, idx - 1) = lower(i);
        else rhs(idx) -= lower(i) * c[beta];
        if (idx + 1 < cnt) a(idx, idx + 1) = upper(i);
      }
      const VectorXcd sol = a.partialPivLu().solve(rhs);
      for (int idx = 0; idx < cnt; ++idx) c[beta + 1 + idx] = sol(idx);
    }
    r.cFull = c;
    Poly p2;
    for (int i = 0; i <= n2; ++i) {
      Poly b = Poly::one();
      for (int j = 0; j < n2 - i; ++j) b = b * Poly({-z1, Complex(1.0)});
      for (int j = 0; j < i; ++j) b = b * Poly({-z2, Complex(1.0)});
      p2 = p2 + (c[i] / (factorial(n2 - i) * factorial(i))) * b;
    }
    r.p2 = p2;
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Complex> canonicalRoots(std::vector<Complex> roots) { return canonical(roots); }

bool sameOrbit(const BetheOrbit& a, const BetheOrbit& b, double delta) {
  if (a.levels.size() != b.levels.size()) return false;
  for (size_t l = 0; l < a.levels.size(); ++l) {
    if (a.levels[l].size() != b.levels[l].size()) return false;
    std::vector<bool> used(b.levels[l].size(), false);
    for (Complex r : a.levels[l]) {
      bool matched = false;
      for (size_t k = 0; k < b.levels[l].size(); ++k) {
        if (!used[k] && std::abs(r - b.levels[l][k]) <= delta * std::max(1.0, std::abs(r))) {
          used[k] = true;
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
  }
  return true;
}

}  // namespace bispec
