#include "bispec/bispectral.hpp"

#include <algorithm>
#include <cmath>

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

BigradedTable swapTable(const BigradedTable& t, BigradedTable::Axis newAxis) {
  BigradedTable out;
  out.axis = newAxis;
  for (const auto& [ij, v] : t.entries) out.entries[{ij.second, ij.first}] = v;
  return out;
}

}  // namespace

DiffeOp dualizeDiffToDiffe(const DiffOp& d) {
  return regradeToDiffe(swapTable(bigradeExtract(d), BigradedTable::Axis::UTau));
}

DiffOp dualizeDiffeToDiff(const DiffeOp& d) {
  return regradeToDiff(swapTable(bigradeExtract(d), BigradedTable::Axis::XLog));
}

SpaceData dualDataForward(const SpaceData& dv, bool special) {
  SpaceData out = dv;
  for (auto& g : out.x)
    g.lambda += special ? Complex(1.0) : Complex(double(g.degrees.size()));
  return out;
}

SpaceData dualDataBackward(const SpaceData& du, bool special) {
  SpaceData out = du;
  for (auto& g : out.x)
    g.lambda -= special ? Complex(1.0) : Complex(double(g.degrees.size()));
  return out;
}

QuasiExpSpace specialMellin(const QuasiPolySpace& v, const std::vector<Complex>& zs) {
  const std::vector<int> ms = specialExponents(v, zs);
  const int n = v.dim();
  const int bigM = static_cast<int>(zs.size());
  const auto vstar = conjugateSpace(v, ConjX::Star);

  Poly kernelDen = Poly::monomial(n);  // x^N * prod (x - z_b)
  for (Complex z : zs) kernelDen = kernelDen * Poly({-z, Complex(1.0)});

  QuasiExpSpace out;
  for (int a = 0; a < bigM; ++a) {
    const Complex za = zs[a];
    const BranchedBase base(za);
    MatrixXcd rows = MatrixXcd::Zero(n, ms[a] + 1);
    for (int f = 0; f < n; ++f) {
      const RationalFn integrand(vstar[f].part.num(), vstar[f].part.den() * kernelDen);
      const int k = rootMultiplicity(integrand.den(), za);
      if (k == 0) continue;
      if (k > ms[a] + 1) throw Error("not special: pole order exceeds m_a + 1");
      const auto g = laurentExpand(integrand, za, -k, -1);  // g[-k .. -1]
      const Complex mu = vstar[f].exponent;
      // residue of x^{u+mu} R(x): z^{u+mu} sum_t binom(u+mu, t) z^{-t} g_{-1-t}
      Poly q;
      for (int t = 0; t < k; ++t) {
        const Complex g1t = g[k - 1 - t];  // g_{-1-t}
        q = q + (base.pow(mu) * ipow(za, -t) * g1t) * binomialPoly(t, mu);
      }
      q = Complex(0.0, 2.0 * M_PI) * q;  // 2 pi i from the contour
      for (int c = 0; c <= q.degree(); ++c) rows(f, c) = q.coeff(c);
    }
    const auto st = staircaseEliminate(rows, 1e-8);
    if (st.pivots.size() != 1) throw Error("not special: transform group rank != 1");
    std::vector<Complex> cs(ms[a] + 1);
    for (int c = 0; c <= ms[a]; ++c) cs[c] = st.reduced(st.pivotRows[0], c);
    Poly q = Poly(std::move(cs)).trim(1e-9);
    if (q.degree() != ms[a]) throw Error("not special: residue degree mismatch");
    out.groups.push_back({base, {monic(q)}});
  }
  return out;
}

QuasiPolySpace specialFourier(const QuasiExpSpace& u, const std::vector<Complex>& lambdas,
                              const std::vector<int>& ns) {
  const auto found = specialDiscreteExponents(u, lambdas);
  std::vector<int> degs = ns.empty() ? found : ns;
  if (degs != found) throw Error("not special: supplied degrees disagree with exponents");
  const int bigM = u.dim();
  const int bigN = static_cast<int>(lambdas.size());
  const auto ubullet = conjugateSpaceU(u, ConjU::Bullet, lambdas, degs);

  QuasiPolySpace out;
  for (int i = 0; i < bigN; ++i) {
    const int ni = degs[i];
    MatrixXcd rows = MatrixXcd::Zero(bigM, ni + 1);
    double obstructionScale = 1e-300;
    double obstruction = 0.0;
    for (int f = 0; f < bigM; ++f) {
      const BranchedBase beta = ubullet[f].base;  // integrand is x^u beta^u r(u)
      const RationalFn& r = ubullet[f].part;
      const Complex logBeta = beta.log();
      // accumulated coefficients of x^{lambda_i - 1 + s} (ln x)^p
      std::vector<std::vector<Complex>> c(ni + 1);
      int maxLog = 0;
      for (int s = 0; s <= ni; ++s) {
        const Complex mu = lambdas[i] - 1.0 + double(s);
        const int k = rootMultiplicity(r.den(), mu);
        if (k == 0) continue;
        maxLog = std::max(maxLog, k - 1);
        const auto g = laurentExpand(r, mu, -k, -1);  // g[-k .. -1]
        c[s].assign(std::max<size_t>(c[s].size(), k), Complex(0.0));
        const Complex bmu = beta.pow(mu);
        for (int p = 0; p < k; ++p) {
          Complex acc(0.0);
          for (int j = p; j < k; ++j)
            acc += g[k - 1 - j] * binomial(j, p) * ipow(logBeta, j - p) / factorial(j);
          c[s][p] += bmu * acc;
        }
      }
      for (int s = 0; s <= ni; ++s)
        for (size_t p = 0; p < c[s].size(); ++p)
          obstructionScale = std::max(obstructionScale, std::abs(c[s][p]));
      for (int s = 0; s <= ni; ++s)
        for (size_t p = 1; p < c[s].size(); ++p) obstruction = std::max(obstruction, std::abs(c[s][p]));
      for (int s = 0; s <= ni; ++s)
        if (!c[s].empty()) rows(f, s) = c[s][0];
    }
    if (obstruction > 1e-7 * obstructionScale) throw Error("log obstruction");
    const auto st = staircaseEliminate(rows, 1e-8);
    if (st.pivots.size() != 1) throw Error("not special: transform group rank != 1");
    std::vector<Complex> cs(ni + 1);
    for (int s = 0; s <= ni; ++s) cs[s] = st.reduced(st.pivotRows[0], s);
    Poly p = Poly(std::move(cs)).trim(1e-9);
    if (p.degree() != ni) throw Error("not special: transform degree mismatch");
    out.groups.push_back({lambdas[i] - 1.0, {monic(p)}});
  }
  return out;
}

// ---------------------------------------------------------------------------

BakerAkhiezer bakerAkhiezer(const QuasiPolySpace& v) {
  const auto b = v.basis();
  const int n = static_cast<int>(b.size());
  const Poly s = wronskianX(b).part;
  std::vector<Poly> minors(n + 1);
  minors[0] = s;
  for (int i = 1; i <= n; ++i) minors[i] = wronskianMinorX(b, i).part;

  Poly denU = Poly::one();
  for (const auto& g : v.groups)
    for (const auto& p : g.polys)
      denU = denU * Poly({-(g.lambda + double(p.degree())), Complex(1.0)});

  int maxX = 0;
  for (const auto& m : minors) maxX = std::max(maxX, m.degree());
  BakerAkhiezer out;
  out.num = MatrixXcd::Zero(maxX + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const Poly ff = fallingFactorialProduct(n - k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i <= minors[k].degree(); ++i)
      for (int j = 0; j <= ff.degree(); ++j)
        out.num(i, j) += sign * minors[k].coeff(i) * ff.coeff(j);
  }
  out.denFirst = s;
  out.denSecond = denU;
  return out;
}

BakerAkhiezer bakerAkhiezerU(const QuasiExpSpace& u) {
  const auto b = u.basis();
  const int m = static_cast<int>(b.size());
  const Poly s = discreteWronskianU(b).part;
  std::vector<Poly> minors(m + 1);
  minors[0] = s;
  for (int i = 1; i <= m; ++i) minors[i] = discreteWronskianMinorU(b, i).part;

  Poly denX = Poly::one();
  for (const auto& g : u.groups)
    for (size_t k = 0; k < g.polys.size(); ++k)
      denX = denX * Poly({-g.base.value, Complex(1.0)});

  int maxU = 0;
  for (const auto& mm : minors) maxU = std::max(maxU, mm.degree());
  BakerAkhiezer out;
  out.num = MatrixXcd::Zero(maxU + 1, m + 1);
  for (int k = 0; k <= m; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i <= minors[k].degree(); ++i) out.num(i, m - k) += sign * minors[k].coeff(i);
  }
  out.denFirst = s;
  out.denSecond = denX;
  return out;
}

double bispectralMismatch(const QuasiPolySpace& v, const QuasiExpSpace& u) {
  const BakerAkhiezer a = bakerAkhiezer(v);   // psi(x, u) = num / (denFirst(x) denSecond(u))
  const BakerAkhiezer b = bakerAkhiezerU(u);  // phi(u, x) = num / (denFirst(u) denSecond(x))

  const int rowsL = static_cast<int>(a.num.rows()) + b.denSecond.degree();
  const int colsL = static_cast<int>(a.num.cols()) + b.denFirst.degree();
  const int rowsR = b.denSecond.degree() + a.denFirst.degree() +
                    static_cast<int>(std::max(a.num.rows(), b.num.cols()));
  const int colsR = b.denFirst.degree() + a.denSecond.degree() +
                    static_cast<int>(std::max(a.num.cols(), b.num.rows()));
  const int rows = std::max(rowsL, rowsR) + 1;
  const int cols = std::max(colsL, colsR) + 1;

  MatrixXcd lhs = MatrixXcd::Zero(rows, cols);  // a.num * denFirst_b(u) * denSecond_b(x)
  for (int i = 0; i < a.num.rows(); ++i)
    for (int j = 0; j < a.num.cols(); ++j) {
      if (a.num(i, j) == Complex(0.0)) continue;
      for (int di = 0; di <= b.denSecond.degree(); ++di)
        for (int dj = 0; dj <= b.denFirst.degree(); ++dj)
          lhs(i + di, j + dj) += a.num(i, j) * b.denSecond.coeff(di) * b.denFirst.coeff(dj);
    }
  MatrixXcd rhs = MatrixXcd::Zero(rows, cols);  // b.num (transposed) * denFirst_a(x) * denSecond_a(u)
  for (int i = 0; i < b.num.rows(); ++i)    // u-power i, x-power j
    for (int j = 0; j < b.num.cols(); ++j) {
      if (b.num(i, j) == Complex(0.0)) continue;
      for (int di = 0; di <= a.denFirst.degree(); ++di)
        for (int dj = 0; dj <= a.denSecond.degree(); ++dj)
          rhs(j + di, i + dj) += b.num(i, j) * a.denFirst.coeff(di) * a.denSecond.coeff(dj);
    }

  // align scale and phase on the largest left entry
  int bi = 0, bj = 0;
  double best = 0.0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (std::abs(lhs(i, j)) > best) {
        best = std::abs(lhs(i, j));
        bi = i;
        bj = j;
      }
  if (best == 0.0) return rhs.cwiseAbs().maxCoeff();
  const Complex scale = rhs(bi, bj) / lhs(bi, bj);
  const double denom = std::max(rhs.cwiseAbs().maxCoeff(), 1e-300);
  return (scale * lhs - rhs).cwiseAbs().maxCoeff() / denom;
}

bool bispectralCheck(const QuasiPolySpace& v, const QuasiExpSpace& u, double tol) {
  return bispectralMismatch(v, u) <= tol;
}

}  // namespace bispec
