#include "bispec/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bispec {

namespace {

Complex ipow(Complex z, int k) {
  Complex r(1.0);
  if (k >= 0)
    for (int i = 0; i < k; ++i) r *= z;
  else
    for (int i = 0; i < -k; ++i) r /= z;
  return r;
}

// Determinant of a small polynomial matrix by cofactor expansion with a
// memo on column subsets.
Poly polyDet(const std::vector<std::vector<Poly>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return Poly::one();
  std::vector<std::optional<Poly>> memo(size_t(1) << n);
  auto rec = [&](auto&& self, int row, unsigned mask) -> Poly {
    if (row == n) return Poly::one();
    if (memo[mask]) return *memo[mask];
    Poly acc;
    int seen = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      if (!m[row][c].isZero()) {
        const Poly sub = self(self, row + 1, mask & ~(1u << c));
        const Poly term = m[row][c] * sub;
        acc = (seen % 2 == 0) ? acc + term : acc - term;
      }
      ++seen;
    }
    memo[mask] = acc;
    return acc;
  };
  return rec(rec, 0, (1u << n) - 1);
}

// Reduced derivative polynomials of x^lambda p: the k-th derivative is
// x^{lambda-k} q_k with q_0 = p and q_{k+1} = (lambda-k) q_k + x q_k'.
std::vector<Poly> derivativeParts(Complex lambda, const Poly& p, int count) {
  std::vector<Poly> q(count);
  if (count == 0) return q;
  q[0] = p;
  for (int k = 1; k < count; ++k) q[k] = (lambda - double(k - 1)) * q[k - 1] + theta(q[k - 1]);
  return q;
}

QuasiWronskianX wronskianColsX(const std::vector<std::pair<Complex, Poly>>& fs,
                               const std::vector<int>& cols) {
  const int n = static_cast<int>(fs.size());
  int maxCol = 0;
  for (int c : cols) maxCol = std::max(maxCol, c);
  Complex expo(0.0);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int r = 0; r < n; ++r) {
    expo += fs[r].first;
    const auto q = derivativeParts(fs[r].first, fs[r].second, maxCol + 1);
    for (int j = 0; j < n; ++j) m[r][j] = q[cols[j]];
  }
  for (int c : cols) expo -= double(c);
  return {expo, polyDet(m)};
}

QuasiWronskianU discreteWronskianColsU(const std::vector<std::pair<BranchedBase, Poly>>& fs,
                                       const std::vector<int>& cols) {
  const int n = static_cast<int>(fs.size());
  BranchedBase base(Complex(1.0), 0.0);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int r = 0; r < n; ++r) {
    base = base * fs[r].first;
    for (int j = 0; j < n; ++j)
      m[r][j] = ipow(fs[r].first.value, cols[j]) * shiftBy(fs[r].second, double(cols[j]));
  }
  return {base, polyDet(m)};
}

std::vector<int> range(int n) {
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// Exponent pattern {0,...,dim-Ma-1} followed by {dim-Ma+m_1 < ...}; returns
// the m_ab list (empty when the point is regular).
std::optional<std::vector<int>> parseExponentPattern(const std::vector<int>& e, int dim) {
  int run = 0;
  while (run < static_cast<int>(e.size()) && e[run] == run) ++run;
  std::vector<int> mab;
  for (int b = run; b < static_cast<int>(e.size()); ++b) {
    const int m = e[b] - run;
    if (m < 1 || (!mab.empty() && m <= mab.back())) return std::nullopt;
    mab.push_back(m);
  }
  (void)dim;
  return mab;
}

int degreeBound(const QuasiPolySpace& v) {
  int s = 0;
  for (const auto& g : v.groups)
    for (const auto& p : g.polys) s += std::max(0, p.degree());
  return s;
}

int degreeBound(const QuasiExpSpace& u) {
  int s = 0;
  for (const auto& g : u.groups)
    for (const auto& p : g.polys) s += std::max(0, p.degree());
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

int QuasiPolySpace::dim() const {
  int d = 0;
  for (const auto& g : groups) d += static_cast<int>(g.polys.size());
  return d;
}

std::vector<std::pair<Complex, Poly>> QuasiPolySpace::basis() const {
  std::vector<std::pair<Complex, Poly>> b;
  for (const auto& g : groups)
    for (const auto& p : g.polys) b.push_back({g.lambda, p});
  return b;
}

int QuasiExpSpace::dim() const {
  int d = 0;
  for (const auto& g : groups) d += static_cast<int>(g.polys.size());
  return d;
}

std::vector<std::pair<BranchedBase, Poly>> QuasiExpSpace::basis() const {
  std::vector<std::pair<BranchedBase, Poly>> b;
  for (const auto& g : groups)
    for (const auto& p : g.polys) b.push_back({g.base, p});
  return b;
}

int SpaceData::bigN() const {
  int s = 0;
  for (const auto& g : x) s += static_cast<int>(g.degrees.size());
  return s;
}

int SpaceData::bigM() const {
  int s = 0;
  for (const auto& g : u) s += static_cast<int>(g.degrees.size());
  return s;
}

int SpaceData::xWeight() const {
  int s = 0;
  for (const auto& g : x)
    for (size_t j = 0; j < g.degrees.size(); ++j) s += g.degrees[j] - static_cast<int>(j);
  return s;
}

int SpaceData::uWeight() const {
  int s = 0;
  for (const auto& g : u)
    for (size_t b = 0; b < g.degrees.size(); ++b) s += g.degrees[b] - static_cast<int>(b);
  return s;
}

// ---------------------------------------------------------------------------

QuasiWronskianX wronskianX(const std::vector<std::pair<Complex, Poly>>& fs) {
  return wronskianColsX(fs, range(static_cast<int>(fs.size())));
}

QuasiWronskianU discreteWronskianU(const std::vector<std::pair<BranchedBase, Poly>>& fs) {
  return discreteWronskianColsU(fs, range(static_cast<int>(fs.size())));
}

QuasiWronskianX wronskianMinorX(const std::vector<std::pair<Complex, Poly>>& fs, int i) {
  const int n = static_cast<int>(fs.size());
  std::vector<int> cols;
  for (int c = 0; c <= n; ++c)
    if (c != n - i) cols.push_back(c);
  return wronskianColsX(fs, cols);
}

QuasiWronskianU discreteWronskianMinorU(const std::vector<std::pair<BranchedBase, Poly>>& fs,
                                        int i) {
  const int n = static_cast<int>(fs.size());
  std::vector<int> cols;
  for (int c = 0; c <= n; ++c)
    if (c != n - i) cols.push_back(c);
  return discreteWronskianColsU(fs, cols);
}

// ---------------------------------------------------------------------------

std::vector<int> exponentsAt(const QuasiPolySpace& v, Complex z, double rankTol) {
  if (approxZero(z, kDelta)) throw Error("exponents at 0 are governed by the lambda-groups");
  const auto b = v.basis();
  const int n = static_cast<int>(b.size());
  if (n == 0) throw Error("exponentsAt: trivial space");
  const int cols = n + degreeBound(v) + 2;
  MatrixXcd taylor(n, cols);
  for (int r = 0; r < n; ++r) {
    const auto q = derivativeParts(b[r].first, b[r].second, cols);
    double fact = 1.0;
    Complex zp(1.0);
    for (int k = 0; k < cols; ++k) {
      if (k > 0) {
        fact *= double(k);
        zp /= z;
      }
      taylor(r, k) = evalAt(q[k], z) * zp / fact;  // overall z^lambda dropped per row
    }
  }
  const auto st = staircaseEliminate(taylor, rankTol);
  if (static_cast<int>(st.pivots.size()) != n)
    throw Error("exponentsAt: basis numerically dependent");
  return st.pivots;
}

std::vector<SingularPointX> singularPoints(const QuasiPolySpace& v, double delta) {
  const auto wr = wronskianX(v.basis());
  if (wr.part.isZero()) throw Error("singularPoints: degenerate space (zero Wronskian)");
  std::vector<SingularPointX> out;
  if (wr.part.degree() < 1) return out;
  const int n = v.dim();
  for (const auto& [center, mult] : clusteredRoots(wr.part)) {
    if (std::abs(center) <= delta) continue;  // x = 0 is not a singular point in C*
    (void)mult;
    SingularPointX sp;
    sp.z = center;
    sp.exponents = exponentsAt(v, center);
    auto mab = parseExponentPattern(sp.exponents, n);
    if (!mab) throw Error("singularPoints: exponent pattern not of data form");
    if (mab->empty()) continue;  // regular after all
    sp.mab = *mab;
    out.push_back(std::move(sp));
  }
  std::sort(out.begin(), out.end(), [](const SingularPointX& a, const SingularPointX& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

DiscreteExponents discreteExponentsAt(const QuasiExpSpace& u, Complex lambda, double rankTol) {
  const auto b = u.basis();
  const int m = static_cast<int>(b.size());
  if (m == 0) throw Error("discreteExponentsAt: trivial space");
  const int cols = m + degreeBound(u) + 2;
  MatrixXcd values(m, cols);
  for (int r = 0; r < m; ++r) {
    Complex zp(1.0);
    for (int j = 0; j < cols; ++j) {
      values(r, j) = zp * evalAt(b[r].second, lambda + double(j));  // z^lambda dropped
      zp *= b[r].first.value;
    }
  }
  const auto st = staircaseEliminate(values, rankTol);
  if (static_cast<int>(st.pivots.size()) != m)
    throw Error("discreteExponentsAt: basis numerically dependent");
  DiscreteExponents out;
  out.exponents = st.pivots;
  out.pivotRows = st.pivotRows;
  out.combination = st.transform;
  // Q_i = prod_{j=c_{i-1}-i+2}^{c_i-i} (u - lambda - j), with c_0 = -1.
  int prev = -1;
  for (int i = 1; i <= m; ++i) {
    const int ci = out.exponents[i - 1];
    Poly q = Poly::one();
    for (int j = prev - i + 2; j <= ci - i; ++j)
      q = q * Poly({-(lambda + double(j)), Complex(1.0)});
    out.frameTypePolys.push_back(q);
    prev = ci;
  }
  return out;
}

// ---------------------------------------------------------------------------

Frame frame(const QuasiExpSpace& u, double delta) {
  const auto b = u.basis();
  const int m = static_cast<int>(b.size());
  if (m > 6) throw Error("frame: desk-scale exceeded");
  std::vector<Poly> s(m + 1, Poly::one());
  for (int i = 1; i <= m; ++i) {
    std::vector<Poly> dets;
    std::vector<int> idx(i);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<std::pair<BranchedBase, Poly>> subset;
      for (int k : idx) subset.push_back(b[k]);
      dets.push_back(discreteWronskianU(subset).part);
      int pos = i - 1;
      while (pos >= 0 && idx[pos] == m - i + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int k = pos + 1; k < i; ++k) idx[k] = idx[k - 1] + 1;
    }
    s[i] = commonMonicDivisor(dets, delta);
  }
  Frame fr;
  for (int i = 1; i <= m; ++i) {
    // divide S_i by prod_{k<i} prod_{j=1}^{i-k+1} P_k(u+j-1), root by root
    Poly rem = s[i];
    for (int k = 1; k < i; ++k) {
      if (fr.polys[k - 1].degree() < 1) continue;
      const auto roots = polyRoots(fr.polys[k - 1]);
      for (int j = 1; j <= i - k + 1; ++j) {
        for (Complex rho : roots) {
          const Complex shifted = rho - double(j - 1);
          if (rootMultiplicity(rem, shifted, delta) < 1) throw Error("frame inconsistency");
          rem = deflate(rem, shifted);
        }
      }
    }
    // P_i appears with shifts u..u+? only once at k = i: S_i / R = P_i(u)
    fr.polys.push_back(monic(rem));
  }
  return fr;
}

// ---------------------------------------------------------------------------

RatDiffOp monicFundamentalDiffOp(const QuasiPolySpace& v) {
  const auto b = v.basis();
  const int n = static_cast<int>(b.size());
  const Poly s = wronskianX(b).part;
  if (s.isZero()) throw Error("degenerate space");
  RatDiffOp d;
  d.coeffs.assign(n + 1, RationalFn());
  d.coeffs[n] = RationalFn::fromPoly(Poly::one());
  for (int i = 1; i <= n; ++i) {
    const Poly si = wronskianMinorX(b, i).part;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    d.coeffs[n - i] = RationalFn(sign * si, Poly::monomial(i) * s);
  }
  return d;
}

RatDiffeOp monicFundamentalDiffeOp(const QuasiExpSpace& u) {
  const auto b = u.basis();
  const int m = static_cast<int>(b.size());
  const Poly s = discreteWronskianU(b).part;
  if (s.isZero()) throw Error("degenerate space");
  RatDiffeOp d;
  d.coeffs.assign(m + 1, RationalFn());
  d.coeffs[m] = RationalFn::fromPoly(Poly::one());
  for (int i = 1; i <= m; ++i) {
    const Poly si = discreteWronskianMinorU(b, i).part;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    // base factors of minor and full Wronskian agree, so the ratio is rational
    d.coeffs[m - i] = RationalFn(sign * si, s);
  }
  return d;
}

namespace {

DiffOp regularizedFromClearing(const QuasiPolySpace& v, const Poly& clearing) {
  const auto b = v.basis();
  const int n = static_cast<int>(b.size());
  const Poly s = wronskianX(b).part;
  if (s.isZero()) throw Error("degenerate space");
  std::vector<Poly> stdCoeffs(n + 1, Poly::zero());
  for (int i = 0; i <= n; ++i) {
    const Poly si = (i == 0) ? s : wronskianMinorX(b, i).part;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    stdCoeffs[n - i] = polyDivideExact(sign * (clearing * si), s, 1e-7, "degenerate space");
  }
  return stdToLog(stdCoeffs);
}

}  // namespace

DiffOp regularizedFundamentalDiffOp(const QuasiPolySpace& v) {
  Poly clearing = Poly::one();
  for (const auto& sp : singularPoints(v))
    for (size_t b = 0; b < sp.mab.size(); ++b)
      clearing = clearing * Poly({-sp.z, Complex(1.0)});
  return regularizedFromClearing(v, clearing);
}

DiffOp regularizedFundamentalDiffOpDirect(const QuasiPolySpace& v) {
  const auto b = v.basis();
  const int n = static_cast<int>(b.size());
  int bigM = 0;
  Poly a0 = Poly::one();
  for (const auto& sp : singularPoints(v)) {
    bigM += static_cast<int>(sp.mab.size());
    for (size_t k = 0; k < sp.mab.size(); ++k) a0 = a0 * Poly({-sp.z, Complex(1.0)});
  }
  // Unknowns: coefficients of A_j(x), deg <= bigM, for j = 0..N.
  const int perPoly = bigM + 1;
  const int unknowns = (n + 1) * perPoly;
  MatrixXcd sys = MatrixXcd::Zero(0, unknowns);
  for (const auto& [lambda, p] : b) {
    // (x d/dx)^k (x^lambda p) = x^lambda (lambda + theta)^k p
    std::vector<Poly> pw(n + 1);
    pw[0] = p;
    for (int k = 1; k <= n; ++k) pw[k] = lambda * pw[k - 1] + theta(pw[k - 1]);
    const int maxDeg = bigM + std::max(0, p.degree()) + 1;
    MatrixXcd rows = MatrixXcd::Zero(maxDeg + 1, unknowns);
    for (int j = 0; j <= n; ++j) {  // operator term A_j (x d/dx)^{n-j}
      const Poly& q = pw[n - j];
      for (int t = 0; t <= bigM; ++t)
        for (int dq = 0; dq <= q.degree(); ++dq)
          rows(t + dq, j * perPoly + t) += q.coeff(dq);
    }
    MatrixXcd merged(sys.rows() + rows.rows(), unknowns);
    merged << sys, rows;
    sys = std::move(merged);
  }
  const MatrixXcd ns = nullspace(sys, 1e-9);
  if (ns.cols() != 1) throw Error("degenerate space: direct solve nullity != 1");
  std::vector<Poly> logCoeffs(n + 1);
  for (int j = 0; j <= n; ++j) {
    std::vector<Complex> cs(perPoly);
    for (int t = 0; t < perPoly; ++t) cs[t] = ns(j * perPoly + t, 0);
    logCoeffs[j] = Poly(std::move(cs));
  }
  // Normalize so that A_0 matches the monic clearing polynomial.
  const Poly& lead = logCoeffs[0];
  if (lead.isZero()) throw Error("degenerate space: zero leading coefficient");
  const Complex scale = a0.lead() / lead.lead();
  for (auto& c : logCoeffs) c = scale * c;
  return normalizeDiffOp(std::move(logCoeffs));
}

DiffOp specialFundamentalDiffOp(const QuasiPolySpace& v, const std::vector<Complex>& zs) {
  specialExponents(v, zs);  // validates
  Poly clearing = Poly::one();
  for (Complex z : zs) clearing = clearing * Poly({-z, Complex(1.0)});
  return regularizedFromClearing(v, clearing);
}

namespace {

std::vector<XGroupData> parseXData(const QuasiExpSpace& u,
                                   const std::vector<Complex>& lambdaCandidates) {
  const int m = u.dim();
  std::vector<XGroupData> xdata;
  for (Complex lambda : lambdaCandidates) {
    const auto de = discreteExponentsAt(u, lambda);
    auto pattern = parseExponentPattern(de.exponents, m);
    if (!pattern || pattern->empty()) continue;  // regular point
    xdata.push_back({lambda, *pattern});
  }
  return xdata;
}

DiffeOp clearDiffeFromMinors(const QuasiExpSpace& u, const Poly& clearing, bool strip,
                             const std::string& what) {
  const auto b = u.basis();
  const int m = static_cast<int>(b.size());
  const Poly s = discreteWronskianU(b).part;
  if (s.isZero()) throw Error("degenerate space");
  std::vector<Poly> coeffs(m + 1, Poly::zero());
  for (int i = 0; i <= m; ++i) {
    const Poly si = (i == 0) ? s : discreteWronskianMinorU(b, i).part;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    coeffs[i] = polyDivideExact(sign * (clearing * si), s, 1e-7, what);
  }
  if (strip && coeffs[0].degree() > 0) {
    // remove factors common to all B_i, root-matched among roots of B_0
    bool changed = true;
    while (changed && coeffs[0].degree() > 0) {
      changed = false;
      for (Complex r : polyRoots(coeffs[0])) {
        bool commonRoot = true;
        for (const Poly& c : coeffs)
          if (!c.isZero() && rootMultiplicity(c, r) < 1) {
            commonRoot = false;
            break;
          }
        if (commonRoot) {
          for (Poly& c : coeffs)
            if (!c.isZero()) c = deflate(c, r);
          changed = true;
          break;
        }
      }
    }
    // B_0 stays monic; rescale the whole operator against numerical drift
    const Complex lead = coeffs[0].lead();
    for (Poly& c : coeffs) c = (Complex(1.0) / lead) * c;
  }
  return normalizeDiffeOp(std::move(coeffs));
}

}  // namespace

RegularizedDiffeOp regularizedFundamentalDiffeOp(const QuasiExpSpace& u,
                                                 const std::vector<Complex>& lambdaCandidates) {
  RegularizedDiffeOp out;
  out.xdata = parseXData(u, lambdaCandidates);
  Poly clearing = Poly::one();
  int bigN = 0;
  for (const auto& g : out.xdata) {
    const int ni = static_cast<int>(g.degrees.size());
    bigN += ni;
    for (int j = 0; j < ni; ++j)
      clearing = clearing * Poly({-(g.lambda + double(g.degrees[j] - ni)), Complex(1.0)});
  }
  out.op = clearDiffeFromMinors(u, clearing, /*strip=*/true, "numerically degenerate data");
  out.nondegenerate = (out.op.coeffs[0].degree() == bigN);
  return out;
}

DiffeOp specialFundamentalDiffeOp(const QuasiExpSpace& u, const std::vector<Complex>& lambdas,
                                  const std::vector<int>& ns) {
  if (lambdas.size() != ns.size()) throw Error("specialFundamentalDiffeOp: size mismatch");
  Poly clearing = Poly::one();
  for (size_t i = 0; i < lambdas.size(); ++i)
    clearing = clearing * Poly({-(lambdas[i] + double(ns[i] - 1)), Complex(1.0)});
  return clearDiffeFromMinors(u, clearing, /*strip=*/false, "not special");
}

// ---------------------------------------------------------------------------

std::vector<QuasiRationalX> conjugateSpace(const QuasiPolySpace& v, ConjX kind) {
  const auto b = v.basis();
  const int n = static_cast<int>(b.size());
  const Poly s = wronskianX(b).part;
  Poly clearing = Poly::one();
  int bigM = 0;
  if (kind == ConjX::Dagger) {
    for (const auto& sp : singularPoints(v))
      for (size_t k = 0; k < sp.mab.size(); ++k) {
        clearing = clearing * Poly({-sp.z, Complex(1.0)});
        ++bigM;
      }
  }
  (void)bigM;
  std::vector<QuasiRationalX> out;
  for (int omit = 0; omit < n; ++omit) {
    std::vector<std::pair<Complex, Poly>> subset;
    for (int k = 0; k < n; ++k)
      if (k != omit) subset.push_back(b[k]);
    const Poly num = wronskianColsX(subset, range(n - 1)).part;
    Complex expo = -b[omit].first + double(n - 1);
    Poly den = s;
    if (kind == ConjX::Dagger) {
      expo -= double(n);
      den = den * clearing;
    }
    out.push_back({expo, RationalFn(num, den)});
  }
  return out;
}

std::vector<QuasiRationalU> conjugateSpaceU(const QuasiExpSpace& u, ConjU kind,
                                            const std::vector<Complex>& lambdas,
                                            const std::vector<int>& ns) {
  const auto b = u.basis();
  const int m = static_cast<int>(b.size());
  const auto full = discreteWronskianU(b);
  Poly bm;
  if (kind == ConjU::DDagger) {
    bm = regularizedFundamentalDiffeOp(u, lambdas).op.coeffs.back();
  } else {
    bm = specialFundamentalDiffeOp(u, lambdas, ns).coeffs.back();
  }
  std::vector<QuasiRationalU> out;
  for (int omit = 0; omit < m; ++omit) {
    std::vector<std::pair<BranchedBase, Poly>> subset;
    BranchedBase subBase(Complex(1.0), 0.0);
    for (int k = 0; k < m; ++k)
      if (k != omit) {
        subset.push_back(b[k]);
        subBase = subBase * b[k].first;
      }
    const auto sub = discreteWronskianColsU(subset, range(m - 1));
    // tau of the subset Wronskian contributes subBase.value * S(u+1)
    const Poly num = subBase.value * shiftByOne(sub.part);
    out.push_back({b[omit].first.inverse(), RationalFn(num, bm * full.part)});
  }
  return out;
}

// ---------------------------------------------------------------------------

SpaceData dataOf(const QuasiPolySpace& v) {
  SpaceData d;
  for (const auto& g : v.groups) {
    XGroupData xg;
    xg.lambda = g.lambda;
    for (const auto& p : g.polys) xg.degrees.push_back(p.degree());
    d.x.push_back(std::move(xg));
  }
  for (const auto& sp : singularPoints(v)) d.u.push_back({BranchedBase(sp.z), sp.mab});
  return d;
}

SpaceData dataOf(const QuasiExpSpace& u, const std::vector<Complex>& lambdaCandidates) {
  SpaceData d;
  for (const auto& g : u.groups) {
    UGroupData ug;
    ug.base = g.base;
    for (const auto& p : g.polys) ug.degrees.push_back(p.degree());
    d.u.push_back(std::move(ug));
  }
  for (const auto& xg : parseXData(u, lambdaCandidates)) d.x.push_back(xg);
  return d;
}

SpaceChecks checks(const QuasiPolySpace& v) {
  SpaceChecks c;
  const auto data = dataOf(v);
  c.degreeBalance = data.degreeBalance();
  c.nondegenerate = true;
  for (const auto& g : v.groups) {
    const int ni = static_cast<int>(g.polys.size());
    int maxDeg = 0;
    for (const auto& p : g.polys) maxDeg = std::max(maxDeg, p.degree());
    MatrixXcd coeffs = MatrixXcd::Zero(ni, maxDeg + 1);
    for (int r = 0; r < ni; ++r)
      for (int k = 0; k <= g.polys[r].degree(); ++k) coeffs(r, k) = g.polys[r].coeff(k);
    // orders of vanishing at x = 0 must be exactly 0..N_i-1
    const auto st = staircaseEliminate(coeffs);
    for (int j = 0; j < ni; ++j)
      if (j >= static_cast<int>(st.pivots.size()) || st.pivots[j] != j) {
        c.nondegenerate = false;
        c.witness = "missing vanishing order at 0";
      }
    // the group must not contain the pure monomial x^{n_ij}
    for (const auto& p : g.polys) {
      MatrixXcd stacked = MatrixXcd::Zero(ni + 1, std::max(maxDeg, p.degree()) + 1);
      stacked.topLeftCorner(ni, maxDeg + 1) = coeffs;
      stacked(ni, p.degree()) = Complex(1.0);
      if (numericRank(stacked) == numericRank(coeffs)) {
        c.nondegenerate = false;
        c.witness = "space contains x^{lambda+n_ij}";
      }
    }
  }
  c.numericallyNondegenerate = c.degreeBalance;
  return c;
}

SpaceChecks checksU(const QuasiExpSpace& u, const std::vector<Complex>& lambdaCandidates) {
  SpaceChecks c;
  const auto data = dataOf(u, lambdaCandidates);
  c.degreeBalance = data.degreeBalance();
  c.numericallyNondegenerate = c.degreeBalance;
  const auto reg = regularizedFundamentalDiffeOp(u, lambdaCandidates);
  c.nondegenerate = c.numericallyNondegenerate && reg.nondegenerate;
  if (!reg.nondegenerate) c.witness = "deg B_0 != N";
  return c;
}

std::vector<int> specialExponents(const QuasiPolySpace& v, const std::vector<Complex>& zs) {
  const int n = v.dim();
  // every singular point must be listed
  for (const auto& sp : singularPoints(v)) {
    bool found = false;
    for (Complex z : zs)
      if (std::abs(z - sp.z) <= 1e-5 * std::max(1.0, std::abs(z))) found = true;
    if (!found) throw Error("not special: singular point missing from z-list");
  }
  std::vector<int> ms;
  for (Complex z : zs) {
    const auto e = exponentsAt(v, z);
    for (int j = 0; j + 1 < n; ++j)
      if (e[j] != j) throw Error("not special: exponent pattern mismatch");
    ms.push_back(e[n - 1] - (n - 1));
  }
  return ms;
}

std::vector<int> specialDiscreteExponents(const QuasiExpSpace& u,
                                          const std::vector<Complex>& lambdas) {
  const int m = u.dim();
  std::vector<int> ns;
  for (Complex lambda : lambdas) {
    const auto de = discreteExponentsAt(u, lambda);
    for (int j = 0; j + 1 < m; ++j)
      if (de.exponents[j] != j) throw Error("not special: discrete exponent pattern mismatch");
    ns.push_back(de.exponents[m - 1] - (m - 1));
  }
  return ns;
}

// ---------------------------------------------------------------------------

std::vector<Poly> quasiPolyKernel(const DiffOp& d, Complex lambda, int degreeBound,
                                  double relTol) {
  int maxDeg = degreeBound;
  for (const auto& a : d.logCoeffs) maxDeg = std::max(maxDeg, degreeBound + a.degree());
  MatrixXcd sys = MatrixXcd::Zero(maxDeg + 1, degreeBound + 1);
  for (int t = 0; t <= degreeBound; ++t) {
    std::vector<Poly> pw(d.order + 1);
    pw[0] = Poly::monomial(t);
    for (int k = 1; k <= d.order; ++k) pw[k] = lambda * pw[k - 1] + theta(pw[k - 1]);
    Poly img;
    for (int i = 0; i <= d.order; ++i) img = img + d.logCoeffs[i] * pw[d.order - i];
    for (int r = 0; r <= img.degree(); ++r) sys(r, t) = img.coeff(r);
  }
  const MatrixXcd ns = nullspace(sys, relTol);
  std::vector<Poly> out;
  for (int c = 0; c < ns.cols(); ++c) {
    std::vector<Complex> cs(degreeBound + 1);
    for (int t = 0; t <= degreeBound; ++t) cs[t] = ns(t, c);
    out.push_back(monic(Poly(std::move(cs)).trim(1e-9)));
  }
  return out;
}

std::vector<Poly> quasiExpKernel(const DiffeOp& d, const BranchedBase& z, int degreeBound,
                                 double relTol) {
  int maxDeg = degreeBound;
  for (const auto& b : d.coeffs) maxDeg = std::max(maxDeg, degreeBound + b.degree());
  MatrixXcd sys = MatrixXcd::Zero(maxDeg + 1, degreeBound + 1);
  for (int t = 0; t <= degreeBound; ++t) {
    Poly img;
    for (int i = 0; i <= d.order; ++i) {
      const int k = d.order - i;
      img = img + ipow(z.value, k) * (d.coeffs[i] * shiftBy(Poly::monomial(t), double(k)));
    }
    for (int r = 0; r <= img.degree(); ++r) sys(r, t) = img.coeff(r);
  }
  const MatrixXcd ns = nullspace(sys, relTol);
  std::vector<Poly> out;
  for (int c = 0; c < ns.cols(); ++c) {
    std::vector<Complex> cs(degreeBound + 1);
    for (int t = 0; t <= degreeBound; ++t) cs[t] = ns(t, c);
    out.push_back(monic(Poly(std::move(cs)).trim(1e-9)));
  }
  return out;
}

}  // namespace bispec
