#include "bispec/repn.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
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

void enumerateCompositions(int total, int parts, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    enumerateCompositions(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

// Monomial exponent vectors of the degree-m symmetric power, lex order.
std::vector<std::vector<int>> symBasis(int rank, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enumerateCompositions(m, rank, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int WeightBlock::indexOf(const std::vector<int>& state) const {
  const auto it = std::lower_bound(states.begin(), states.end(), state);
  if (it == states.end() || *it != state) return -1;
  return static_cast<int>(it - states.begin());
}

WeightBlock makeWeightBlock(int rank, const std::vector<int>& factorWeights,
                            const std::vector<int>& weight) {
  WeightBlock b;
  b.rank = rank;
  b.factorWeights = factorWeights;
  b.weight = weight;
  std::vector<std::vector<std::vector<int>>> perFactor;
  for (int w : factorWeights) perFactor.push_back(symBasis(rank, w));
  std::vector<int> cur;
  std::function<void(size_t, std::vector<int>&)> rec = [&](size_t f, std::vector<int>& acc) {
    if (f == perFactor.size()) {
      std::vector<int> colSums(rank, 0);
      for (size_t a = 0; a < perFactor.size(); ++a)
        for (int c = 0; c < rank; ++c) colSums[c] += acc[a * rank + c];
      if (colSums == weight) b.states.push_back(acc);
      return;
    }
    for (const auto& mono : perFactor[f]) {
      for (int c = 0; c < rank; ++c) acc.push_back(mono[c]);
      rec(f + 1, acc);
      acc.resize(acc.size() - rank);
    }
  };
  std::vector<int> acc;
  rec(0, acc);
  std::sort(b.states.begin(), b.states.end());
  return b;
}

std::vector<int> shiftWeight(const std::vector<int>& w, int i, int j) {
  std::vector<int> out = w;
  out[i] += 1;
  out[j] -= 1;
  return out;
}

namespace {

// E_ij on factor a: coefficient K[a][j], exponent moves e_j -> e_i.
void applyFactorGenerator(const WeightBlock& from, const WeightBlock& to, int a, int i, int j,
                          MatrixXcd& out) {
  for (int s = 0; s < from.dim(); ++s) {
    const int kaj = from.entry(s, a, j);
    if (kaj == 0) continue;
    std::vector<int> st = from.states[s];
    if (i == j) {
      const int idx = to.indexOf(st);
      if (idx >= 0) out(idx, s) += double(kaj);
      continue;
    }
    st[a * from.rank + j] -= 1;
    st[a * from.rank + i] += 1;
    const int idx = to.indexOf(st);
    if (idx >= 0) out(idx, s) += double(kaj);
  }
}

}  // namespace

MatrixXcd generatorTotal(const WeightBlock& from, const WeightBlock& to, int i, int j) {
  MatrixXcd out = MatrixXcd::Zero(to.dim(), from.dim());
  for (int a = 0; a < from.numFactors(); ++a) applyFactorGenerator(from, to, a, i, j, out);
  return out;
}

MatrixXcd bSeries(const WeightBlock& block, int i, int j, Complex t, bool literalJ) {
  const int d = block.dim();
  MatrixXcd acc = MatrixXcd::Identity(d, d);
  const Complex h = Complex(double(block.weight[i] - block.weight[j]));
  std::vector<WeightBlock> chain{block};
  MatrixXcd up = MatrixXcd::Identity(d, d);  // (E_ij)^s, block -> chain.back()
  Complex denom(1.0);
  for (int s = 1;; ++s) {
    const auto wNext = shiftWeight(chain.back().weight, i, j);
    if (wNext[j] < 0) break;
    WeightBlock next = makeWeightBlock(block.rank, block.factorWeights, wNext);
    if (next.dim() == 0) break;
    const MatrixXcd upNext = generatorTotal(chain.back(), next, i, j) * up;
    chain.push_back(std::move(next));
    if (upNext.cwiseAbs().maxCoeff() == 0.0) break;
    MatrixXcd flow = upNext;  // then (E_ji)^s back down
    for (int k = static_cast<int>(chain.size()) - 1; k >= 1; --k)
      flow = generatorTotal(chain[k], chain[k - 1], j, i) * flow;
    const double leading = literalJ ? double(j + 1) : double(s);
    denom *= leading * (t - h - double(s));
    acc += flow / denom;
    up = upNext;
  }
  return acc;
}

MatrixXcd gaudinKZ(const WeightBlock& block, int a, const std::vector<Complex>& lambda,
                   const std::vector<Complex>& z, bool sameFactorEii) {
  const int d = block.dim();
  const int rank = block.rank;
  const int M = block.numFactors();
  MatrixXcd out = MatrixXcd::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    Complex diag(0.0);
    for (int i = 0; i < rank; ++i) {
      const double kai = double(block.entry(s, a, i));
      const Complex eii = sameFactorEii ? Complex(kai) : Complex(double(block.weight[i]));
      diag += (lambda[i] - 0.5 * eii) * kai;
    }
    out(s, s) += diag;
  }
  for (int b = 0; b < M; ++b) {
    if (b == a) continue;
    const Complex cPlus = z[a] / (z[a] - z[b]);
    const Complex cMinus = z[b] / (z[a] - z[b]);
    for (int s = 0; s < d; ++s) {
      Complex omega0(0.0);
      for (int i = 0; i < rank; ++i)
        omega0 += 0.5 * double(block.entry(s, a, i)) * double(block.entry(s, b, i));
      out(s, s) += (cPlus + cMinus) * omega0;
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
          // Omega^+ part: E_ij^{(a)} E_ji^{(b)}
          if (block.entry(s, a, j) > 0 && block.entry(s, b, i) > 0) {
            std::vector<int> st = block.states[s];
            st[a * rank + j] -= 1;
            st[a * rank + i] += 1;
            st[b * rank + i] -= 1;
            st[b * rank + j] += 1;
            const int idx = block.indexOf(st);
            if (idx >= 0)
              out(idx, s) += cPlus * double(block.entry(s, a, j)) * double(block.entry(s, b, i));
          }
          // Omega^- part: E_ji^{(a)} E_ij^{(b)}
          if (block.entry(s, a, i) > 0 && block.entry(s, b, j) > 0) {
            std::vector<int> st = block.states[s];
            st[a * rank + i] -= 1;
            st[a * rank + j] += 1;
            st[b * rank + j] -= 1;
            st[b * rank + i] += 1;
            const int idx = block.indexOf(st);
            if (idx >= 0)
              out(idx, s) += cMinus * double(block.entry(s, a, i)) * double(block.entry(s, b, j));
          }
        }
    }
  }
  return out;
}

MatrixXcd gaudinDynamical(const WeightBlock& block, int i, const std::vector<Complex>& lambda,
                          const std::vector<Complex>& z) {
  const int d = block.dim();
  const int rank = block.rank;
  MatrixXcd left = MatrixXcd::Identity(d, d);
  for (int k = rank - 1; k > i; --k)
    left = left * bSeries(block, i, k, lambda[i] - lambda[k]);
  MatrixXcd zDiag = MatrixXcd::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    Complex v(1.0);
    for (int a = 0; a < block.numFactors(); ++a) v *= ipow(z[a], -block.entry(s, a, i));
    zDiag(s, s) = v;
  }
  MatrixXcd right = MatrixXcd::Identity(d, d);
  for (int k = 0; k < i; ++k) right = right * bSeries(block, k, i, lambda[k] - lambda[i]);
  return left.partialPivLu().solve(zDiag * right);
}

// ---------------------------------------------------------------------------
// R-matrix

namespace {

struct PairSpace {
  int rank;
  std::vector<std::vector<int>> left, right;  // monomial bases
  int dim() const { return static_cast<int>(left.size() * right.size()); }
  int index(int a, int b) const { return a * static_cast<int>(right.size()) + b; }
};

// E_ab acting on slot 0 or 1 of the pair space.
MatrixXcd pairGenerator(const PairSpace& ps, int slot, int a, int b) {
  const int P = static_cast<int>(ps.left.size());
  const int Q = static_cast<int>(ps.right.size());
  MatrixXcd out = MatrixXcd::Zero(ps.dim(), ps.dim());
  const auto& basis = slot == 0 ? ps.left : ps.right;
  std::map<std::vector<int>, int> idx;
  for (size_t k = 0; k < basis.size(); ++k) idx[basis[k]] = static_cast<int>(k);
  for (int p = 0; p < P; ++p)
    for (int q = 0; q < Q; ++q) {
      const auto& mono = slot == 0 ? ps.left[p] : ps.right[q];
      if (mono[b] == 0) continue;
      std::vector<int> next = mono;
      if (a != b) {
        next[b] -= 1;
        next[a] += 1;
      }
      const auto it = idx.find(next);
      if (it == idx.end()) continue;
      const int tgt = slot == 0 ? ps.index(it->second, q) : ps.index(p, it->second);
      out(tgt, ps.index(p, q)) += double(mono[b]);
    }
  return out;
}

}  // namespace

MatrixXcd rMatrix(int rank, int p, int q, Complex t) {
  PairSpace ps;
  ps.rank = rank;
  ps.left = symBasis(rank, p);
  ps.right = symBasis(rank, q);
  const int D = ps.dim();

  // gl-invariant split Casimir; its eigenprojectors span the invariant algebra
  MatrixXcd casimir = MatrixXcd::Zero(D, D);
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b)
      casimir += pairGenerator(ps, 0, a, b) * pairGenerator(ps, 1, b, a);

  // block-diagonalize by combined weight
  std::map<std::vector<int>, std::vector<int>> byWeight;
  for (int ia = 0; ia < static_cast<int>(ps.left.size()); ++ia)
    for (int ib = 0; ib < static_cast<int>(ps.right.size()); ++ib) {
      std::vector<int> w(rank);
      for (int c = 0; c < rank; ++c) w[c] = ps.left[ia][c] + ps.right[ib][c];
      byWeight[w].push_back(ps.index(ia, ib));
    }

  std::map<long long, MatrixXcd> projectors;  // keyed by rounded eigenvalue
  for (const auto& [w, idxs] : byWeight) {
    const int bd = static_cast<int>(idxs.size());
    MatrixXcd sub(bd, bd);
    for (int r = 0; r < bd; ++r)
      for (int c = 0; c < bd; ++c) sub(r, c) = casimir(idxs[r], idxs[c]);
    Eigen::ComplexEigenSolver<MatrixXcd> es(sub);
    if (es.info() != Eigen::Success) throw Error("rMatrix: eigensolver failure");
    const MatrixXcd vecs = es.eigenvectors();
    const MatrixXcd vinv = vecs.inverse();
    for (int k = 0; k < bd; ++k) {
      const long long key = std::llround(es.eigenvalues()(k).real());
      MatrixXcd& proj = projectors
                            .try_emplace(key, MatrixXcd::Zero(D, D))
                            .first->second;
      for (int r = 0; r < bd; ++r)
        for (int c = 0; c < bd; ++c) proj(idxs[r], idxs[c]) += vecs(r, k) * vinv(k, c);
    }
  }

  std::vector<MatrixXcd> basisOps;
  for (const auto& [key, proj] : projectors) basisOps.push_back(proj);
  const int nb = static_cast<int>(basisOps.size());

  // intertwining relations: R (t E_ab x 1 + sum_c E_ac x E_cb)
  //                       = (t E_ab x 1 + sum_c E_cb x E_ac) R   for all a, b
  MatrixXcd sys(rank * rank * D * D, nb);
  int row = 0;
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b) {
      MatrixXcd lhsOp = t * pairGenerator(ps, 0, a, b);
      MatrixXcd rhsOp = lhsOp;
      for (int c = 0; c < rank; ++c) {
        lhsOp += pairGenerator(ps, 0, a, c) * pairGenerator(ps, 1, c, b);
        rhsOp += pairGenerator(ps, 0, c, b) * pairGenerator(ps, 1, a, c);
      }
      for (int k = 0; k < nb; ++k) {
        const MatrixXcd g = basisOps[k] * lhsOp - rhsOp * basisOps[k];
        for (int r = 0; r < D; ++r)
          for (int c = 0; c < D; ++c) sys(row + r * D + c, k) = g(r, c);
      }
      row += D * D;
    }
  const MatrixXcd ns = nullspace(sys, 1e-9);
  if (ns.cols() != 1) throw Error("R-matrix singular t");

  MatrixXcd r = MatrixXcd::Zero(D, D);
  for (int k = 0; k < nb; ++k) r += ns(k, 0) * basisOps[k];
  // normalize on the highest vector x_1^p x x_1^q
  std::vector<int> hwL(rank, 0), hwR(rank, 0);
  hwL[0] = p;
  hwR[0] = q;
  int hwIdx = -1;
  for (int ia = 0; ia < static_cast<int>(ps.left.size()); ++ia)
    if (ps.left[ia] == hwL)
      for (int ib = 0; ib < static_cast<int>(ps.right.size()); ++ib)
        if (ps.right[ib] == hwR) hwIdx = ps.index(ia, ib);
  const Complex scale = r(hwIdx, hwIdx);
  if (std::abs(scale) < 1e-12) throw Error("R-matrix singular t");
  return r / scale;
}

namespace {

// Apply a pair operator on factors (j, k) of a weight block.
MatrixXcd applyPairOperator(const WeightBlock& block, int j, int k, const PairSpace& ps,
                            const MatrixXcd& op) {
  const int d = block.dim();
  const int rank = block.rank;
  std::map<std::vector<int>, int> leftIdx, rightIdx;
  for (size_t s = 0; s < ps.left.size(); ++s) leftIdx[ps.left[s]] = static_cast<int>(s);
  for (size_t s = 0; s < ps.right.size(); ++s) rightIdx[ps.right[s]] = static_cast<int>(s);
  MatrixXcd out = MatrixXcd::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    std::vector<int> mj(rank), mk(rank);
    for (int c = 0; c < rank; ++c) {
      mj[c] = block.entry(s, j, c);
      mk[c] = block.entry(s, k, c);
    }
    const int col = ps.index(leftIdx.at(mj), rightIdx.at(mk));
    for (int ia = 0; ia < static_cast<int>(ps.left.size()); ++ia)
      for (int ib = 0; ib < static_cast<int>(ps.right.size()); ++ib) {
        const Complex v = op(ps.index(ia, ib), col);
        if (v == Complex(0.0)) continue;
        std::vector<int> st = block.states[s];
        for (int c = 0; c < rank; ++c) {
          st[j * rank + c] = ps.left[ia][c];
          st[k * rank + c] = ps.right[ib][c];
        }
        const int idx = block.indexOf(st);
        if (idx >= 0) out(idx, s) += v;
      }
  }
  return out;
}

MatrixXcd rOnBlock(const WeightBlock& block, int j, int k, Complex t) {
  PairSpace ps;
  ps.rank = block.rank;
  ps.left = symBasis(block.rank, block.factorWeights[j]);
  ps.right = symBasis(block.rank, block.factorWeights[k]);
  const MatrixXcd r = rMatrix(block.rank, block.factorWeights[j], block.factorWeights[k], t);
  return applyPairOperator(block, j, k, ps, r);
}

}  // namespace

MatrixXcd xxxKZ(const WeightBlock& block, int i, const std::vector<Complex>& z,
                const std::vector<Complex>& lambda) {
  const int d = block.dim();
  const int N = block.numFactors();
  MatrixXcd left = MatrixXcd::Identity(d, d);
  for (int k = N - 1; k > i; --k) left = left * rOnBlock(block, i, k, lambda[i] - lambda[k]);
  MatrixXcd zDiag = MatrixXcd::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    Complex v(1.0);
    for (int a = 0; a < block.rank; ++a) v *= ipow(z[a], -block.entry(s, i, a));
    zDiag(s, s) = v;
  }
  MatrixXcd right = MatrixXcd::Identity(d, d);
  for (int k = 0; k < i; ++k) right = right * rOnBlock(block, k, i, lambda[k] - lambda[i]);
  return left.partialPivLu().solve(zDiag * right);
}

MatrixXcd xxxDynamical(const WeightBlock& block, int a, const std::vector<Complex>& z,
                       const std::vector<Complex>& lambda) {
  const int d = block.dim();
  const int rank = block.rank;
  const int N = block.numFactors();
  MatrixXcd out = MatrixXcd::Zero(d, d);
  const double ma = double(block.weight[a]);
  for (int s = 0; s < d; ++s) {
    Complex diag = -0.5 * ma * ma;
    for (int i = 0; i < N; ++i) diag += lambda[i] * double(block.entry(s, i, a));
    out(s, s) += diag;
  }
  for (int b = 0; b < rank; ++b) {
    if (b == a) continue;
    const Complex c = z[b] / (z[a] - z[b]);
    // E_ab E_ba - E_aa with total generators
    const auto wMid = shiftWeight(block.weight, b, a);
    if (wMid[a] >= 0) {
      const WeightBlock mid = makeWeightBlock(rank, block.factorWeights, wMid);
      if (mid.dim() > 0) {
        const MatrixXcd eba = generatorTotal(block, mid, b, a);
        const MatrixXcd eab = generatorTotal(mid, block, a, b);
        out += c * (eab * eba);
      }
    }
    out -= c * ma * MatrixXcd::Identity(d, d);
  }
  for (int b = 0; b < rank; ++b) {
    for (int s = 0; s < d; ++s)
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          // (E_ab)^{(i)} (E_ba)^{(j)}
          const int kj = block.entry(s, j, a);
          std::vector<int> st = block.states[s];
          if (b == a) {
            if (kj == 0) continue;
            const int ki = block.entry(s, i, a);
            if (ki == 0) continue;
            out(s, s) += double(kj) * double(ki);
            continue;
          }
          if (kj == 0) continue;
          st[j * rank + a] -= 1;
          st[j * rank + b] += 1;
          const int kib = st[i * rank + b];
          if (kib == 0) continue;
          st[i * rank + b] -= 1;
          st[i * rank + a] += 1;
          const int idx = block.indexOf(st);
          if (idx >= 0) out(idx, s) += double(kj) * double(kib);
        }
  }
  return out;
}

// ---------------------------------------------------------------------------

MatrixXcd dualityMap(const WeightBlock& from, const WeightBlock& to) {
  if (from.rank != to.numFactors() || to.rank != from.numFactors())
    throw Error("dualityMap: shape mismatch");
  MatrixXcd out = MatrixXcd::Zero(to.dim(), from.dim());
  for (int s = 0; s < from.dim(); ++s) {
    std::vector<int> transposed(to.numFactors() * to.rank);
    for (int a = 0; a < from.numFactors(); ++a)
      for (int i = 0; i < from.rank; ++i)
        transposed[i * to.rank + a] = from.entry(s, a, i);
    const int idx = to.indexOf(transposed);
    if (idx < 0) throw Error("dualityMap: transposed state missing");
    out(idx, s) = Complex(1.0);
  }
  return out;
}

DualityReport dualityCheck(const std::vector<int>& m, const std::vector<int>& n,
                           const std::vector<Complex>& lambda, const std::vector<Complex>& z) {
  const int N = static_cast<int>(n.size());
  const int M = static_cast<int>(m.size());
  const WeightBlock gBlock = makeWeightBlock(N, m, n);  // L_m[n] over gl_N
  const WeightBlock xBlock = makeWeightBlock(M, n, m);  // L_n[m] over gl_M
  const MatrixXcd dual = dualityMap(gBlock, xBlock);
  const MatrixXcd dualInv = dual.inverse();
  DualityReport rep;
  auto relNorm = [](const MatrixXcd& a, const MatrixXcd& b) {
    const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
    return (a - b).cwiseAbs().maxCoeff() / scale;
  };
  for (int a = 0; a < M; ++a) {
    const MatrixXcd hg = gaudinKZ(gBlock, a, lambda, z);
    const MatrixXcd gx = xxxDynamical(xBlock, a, z, lambda);
    rep.kzNorms.push_back(relNorm(hg, dualInv * gx * dual));
  }
  for (int i = 0; i < N; ++i) {
    const MatrixXcd gg = gaudinDynamical(gBlock, i, lambda, z);
    const MatrixXcd hx = xxxKZ(xBlock, i, z, lambda);
    rep.dynNorms.push_back(relNorm(gg, dualInv * hx * dual));
  }
  for (double v : rep.kzNorms) rep.maxNorm = std::max(rep.maxNorm, v);
  for (double v : rep.dynNorms) rep.maxNorm = std::max(rep.maxNorm, v);
  return rep;
}

// ---------------------------------------------------------------------------
// 2x2 Bethe vectors

VectorXcd omegaGaudin(const std::vector<Complex>& ts, const WeightBlock& block,
                      const std::vector<Complex>& z) {
  if (block.rank != 2 || block.numFactors() != 2) throw Error("omegaGaudin: needs 2x2");
  const int n2 = static_cast<int>(ts.size());
  const int m1 = block.factorWeights[0], m2 = block.factorWeights[1];
  VectorXcd out = VectorXcd::Zero(block.dim());
  std::vector<int> perm(n2);
  std::iota(perm.begin(), perm.end(), 0);
  for (int s = 0; s < block.dim(); ++s) {
    const int i = block.entry(s, 1, 1);  // K[2][2]
    // symmetrized product: first n2-i variables at z_1, the rest at z_2
    Complex ci(0.0);
    std::vector<int> idx(n2);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      Complex term(1.0);
      for (int k = 0; k < n2 - i; ++k) term /= (ts[idx[k]] - z[0]);
      for (int k = n2 - i; k < n2; ++k) term /= (ts[idx[k]] - z[1]);
      ci += term;
    } while (std::next_permutation(idx.begin(), idx.end()));
    out(s) = ci * binomial(m1, n2 - i) * binomial(m2, i);
  }
  return out;
}

VectorXcd omegaXXX(const std::vector<Complex>& ts, const WeightBlock& block,
                   const std::vector<Complex>& lambdaH, const std::vector<int>& n) {
  if (block.rank != 2 || block.numFactors() != 2) throw Error("omegaXXX: needs 2x2");
  const int m2 = static_cast<int>(ts.size());
  const int n1f = block.factorWeights[0], n2f = block.factorWeights[1];
  VectorXcd out = VectorXcd::Zero(block.dim());
  for (int s = 0; s < block.dim(); ++s) {
    const int i = block.entry(s, 1, 1);
    Complex ci(0.0);
    std::vector<int> idx(m2);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      Complex term(1.0);
      for (int k = 0; k < m2 - i; ++k) term /= (ts[idx[k]] - lambdaH[0] + double(n[0]));
      for (int k = m2 - i; k < m2; ++k) {
        const Complex sb = ts[idx[k]];
        term *= (sb - lambdaH[0]) /
                ((sb - lambdaH[0] + double(n[0])) * (sb - lambdaH[1] + double(n[1])));
      }
      for (int ka = 0; ka < m2 - i; ++ka)
        for (int kb = m2 - i; kb < m2; ++kb)
          term *= (ts[idx[ka]] - ts[idx[kb]] - 1.0) / (ts[idx[ka]] - ts[idx[kb]]);
      ci += term;
    } while (std::next_permutation(idx.begin(), idx.end()));
    out(s) = ci * binomial(n1f, m2 - i) * binomial(n2f, i);
  }
  return out;
}

MatrixXcd weylMapXXX(const WeightBlock& from, const WeightBlock& to) {
  if (from.rank != 2 || from.numFactors() != 2) throw Error("weylMapXXX: needs 2x2");
  const int n1 = from.factorWeights[0], n2 = from.factorWeights[1];
  const int m2 = from.weight[1];
  MatrixXcd out = MatrixXcd::Zero(to.dim(), from.dim());
  for (int s = 0; s < from.dim(); ++s) {
    const int i = from.entry(s, 1, 1);
    std::vector<int> target{m2 - i, n1 - m2 + i, i, n2 - i};
    const int idx = to.indexOf(target);
    if (idx < 0) throw Error("weylMapXXX: image state missing");
    const double cf = binomial(n1, m2 - i) * binomial(n2, i);
    const double ct = binomial(n1, n1 - m2 + i) * binomial(n2, n2 - i);
    out(idx, s) = ct / cf;
  }
  return out;
}

MatrixXcd bMapGaudin(const WeightBlock& from, const WeightBlock& to,
                     const std::vector<Complex>& lambda) {
  if (from.rank != 2 || from.numFactors() != 2) throw Error("bMapGaudin: needs 2x2");
  const int m1 = from.factorWeights[0], m2 = from.factorWeights[1];
  const int n2 = from.weight[1];
  MatrixXcd pre = MatrixXcd::Zero(to.dim(), from.dim());
  for (int s = 0; s < from.dim(); ++s) {
    const int i = from.entry(s, 1, 1);
    std::vector<int> target{n2 - i, m1 - n2 + i, i, m2 - i};
    const int idx = to.indexOf(target);
    if (idx < 0) throw Error("bMapGaudin: image state missing");
    const double cf = binomial(m1, n2 - i) * binomial(m2, i);
    const double ct = binomial(m1, m1 - n2 + i) * binomial(m2, m2 - i);
    pre(idx, s) = ct / cf;
  }
  return bSeries(to, 1, 0, lambda[0] - lambda[1]) * pre;
}

// ---------------------------------------------------------------------------
// Eigenvector checks

namespace {

double relativeEigenResidual(const MatrixXcd& h, const VectorXcd& v, Complex mu) {
  const VectorXcd lhs = h * v;
  const double scale = std::max({lhs.cwiseAbs().maxCoeff(),
                                 (mu * v).cwiseAbs().maxCoeff(), 1e-300});
  return (lhs - mu * v).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

std::vector<EigencheckEntry> eigencheckGaudin(const BetheOrbit& orbit, const GaudinProblem& p) {
  if (p.bigN() != 2 || p.bigM() != 2) throw Error("eigencheckGaudin: needs N = M = 2");
  const WeightBlock block = makeWeightBlock(2, p.m, p.n);
  const std::vector<Complex> ts = orbit.levels.empty() ? std::vector<Complex>{} : orbit.levels[0];
  std::vector<Complex> z{p.z[0].value, p.z[1].value};
  const VectorXcd omega = omegaGaudin(ts, block, z);
  if (omega.cwiseAbs().maxCoeff() < 1e-12) throw Error("degenerate Bethe vector");
  std::vector<Complex> lambdaH(2);
  for (int i = 0; i < 2; ++i) lambdaH[i] = p.lambda[i] + double(p.n[i]);
  LeveledPoint t;
  t.levels.push_back(ts);
  std::vector<EigencheckEntry> out;
  for (int a = 0; a < 2; ++a) {
    const MatrixXcd h = gaudinKZ(block, a, lambdaH, z);
    const Complex mu = masterLogZDerivative(t, p, a);
    out.push_back({"H^G_" + std::to_string(a + 1), mu, relativeEigenResidual(h, omega, mu)});
  }
  Complex prodT(1.0);
  for (Complex v : ts) prodT *= v;
  Complex muG1 = prodT;
  for (int a = 0; a < 2; ++a) muG1 *= ipow(z[a], -p.m[a]);
  const Complex muG2 = Complex(1.0) / prodT;
  const MatrixXcd g1 = gaudinDynamical(block, 0, lambdaH, z);
  const MatrixXcd g2 = gaudinDynamical(block, 1, lambdaH, z);
  out.push_back({"G^G_1", muG1, relativeEigenResidual(g1, omega, muG1)});
  out.push_back({"G^G_2", muG2, relativeEigenResidual(g2, omega, muG2)});
  return out;
}

std::vector<EigencheckEntry> eigencheckXXX(const BetheOrbit& xxxOrbit, const GaudinProblem& p) {
  if (p.bigN() != 2 || p.bigM() != 2) throw Error("eigencheckXXX: needs N = M = 2");
  const WeightBlock block = makeWeightBlock(2, p.n, p.m);
  std::vector<Complex> ts;
  if (!xxxOrbit.levels.empty())
    for (Complex s : xxxOrbit.levels[0]) ts.push_back(s - 1.0);  // xi shift
  std::vector<Complex> z{p.z[0].value, p.z[1].value};
  std::vector<Complex> lambdaH(2);
  for (int i = 0; i < 2; ++i) lambdaH[i] = p.lambda[i] + double(p.n[i]);
  const VectorXcd omega = omegaXXX(ts, block, lambdaH, p.n);
  if (omega.cwiseAbs().maxCoeff() < 1e-12) throw Error("degenerate Bethe vector");
  std::vector<EigencheckEntry> out;
  for (int i = 0; i < 2; ++i) {
    const MatrixXcd h = xxxKZ(block, i, z, lambdaH);
    Complex mu(1.0);
    for (Complex tj : ts)
      mu *= (tj - lambdaH[i]) / (tj - lambdaH[i] + double(p.n[i]));
    out.push_back({"H^X_" + std::to_string(i + 1), mu, relativeEigenResidual(h, omega, mu)});
  }
  Complex sumT(0.0);
  for (Complex tj : ts) sumT += tj;
  const double mbar = double(p.m[1]);
  Complex d1(0.0);
  for (int i = 0; i < 2; ++i)
    d1 += double(p.n[i]) * (lambdaH[i] - 0.5 * double(p.n[i]));
  d1 += sumT - 0.5 * mbar - double(p.m[1]) * z[1] / (z[0] - z[1]);
  Complex d2 = -sumT - 0.5 * mbar - double(p.m[1]) * z[0] / (z[1] - z[0]);
  const MatrixXcd g1 = xxxDynamical(block, 0, z, lambdaH);
  const MatrixXcd g2 = xxxDynamical(block, 1, z, lambdaH);
  out.push_back({"G^X_1", d1, relativeEigenResidual(g1, omega, d1)});
  out.push_back({"G^X_2", d2, relativeEigenResidual(g2, omega, d2)});
  return out;
}

ConjectureReport conjectureCheck(const BetheOrbit& gaudinOrbit, const GaudinProblem& p) {
  if (p.bigN() != 2 || p.bigM() != 2) throw Error("conjectureCheck: needs N = M = 2");
  const WeightBlock gBlock = makeWeightBlock(2, p.m, p.n);
  const WeightBlock xBlock = makeWeightBlock(2, p.n, p.m);
  std::vector<Complex> z{p.z[0].value, p.z[1].value};
  std::vector<Complex> lambdaH(2);
  for (int i = 0; i < 2; ++i) lambdaH[i] = p.lambda[i] + double(p.n[i]);
  const std::vector<Complex> ts =
      gaudinOrbit.levels.empty() ? std::vector<Complex>{} : gaudinOrbit.levels[0];
  const VectorXcd omegaG = omegaGaudin(ts, gBlock, z);

  const BetheOrbit xxxOrbit = correspond(gaudinOrbit, p);
  std::vector<Complex> ss;
  if (!xxxOrbit.levels.empty())
    for (Complex s : xxxOrbit.levels[0]) ss.push_back(s - 1.0);
  const VectorXcd omegaX = omegaXXX(ss, xBlock, lambdaH, p.n);

  const MatrixXcd dual = dualityMap(xBlock, gBlock);
  const VectorXcd image = dual * omegaX;
  const Complex kappa = (image.adjoint() * omegaG)(0) / (image.adjoint() * image)(0);
  ConjectureReport rep;
  rep.kappa = kappa;
  rep.proportionalityResidual =
      (omegaG - kappa * image).norm() / std::max(omegaG.norm(), 1e-300);
  return rep;
}

// ---------------------------------------------------------------------------

VectorXcd expandInGaudinBasis(const Poly& p, int deg, Complex z1, Complex z2) {
  MatrixXcd basis = MatrixXcd::Zero(deg + 1, deg + 1);
  for (int i = 0; i <= deg; ++i) {
    Poly b = Poly::one();
    for (int j = 0; j < deg - i; ++j) b = b * Poly({-z1, Complex(1.0)});
    for (int j = 0; j < i; ++j) b = b * Poly({-z2, Complex(1.0)});
    b = (1.0 / (factorial(deg - i) * factorial(i))) * b;
    for (int k = 0; k <= deg; ++k) basis(k, i) = b.coeff(k);
  }
  VectorXcd rhs = VectorXcd::Zero(deg + 1);
  for (int k = 0; k <= deg; ++k) rhs(k) = p.coeff(k);
  return basis.partialPivLu().solve(rhs);
}

VectorXcd expandInXXXBasis(const Poly& q, int deg, Complex lam1, Complex lam2, int n1, int n2) {
  (void)n2;
  MatrixXcd basis = MatrixXcd::Zero(deg + 1, deg + 1);
  for (int i = 0; i <= deg; ++i) {
    Poly b = Poly::one();
    for (int j = 0; j < deg - i; ++j)
      b = b * Poly({-(lam1 + 1.0 + double(n1) - double(j)), Complex(1.0)});
    for (int j = 0; j < i; ++j) b = b * Poly({-(lam2 + 1.0 + double(j)), Complex(1.0)});
    b = (1.0 / (factorial(deg - i) * factorial(i))) * b;
    for (int k = 0; k <= deg; ++k) basis(k, i) = b.coeff(k);
  }
  VectorXcd rhs = VectorXcd::Zero(deg + 1);
  for (int k = 0; k <= deg; ++k) rhs(k) = q.coeff(k);
  return basis.partialPivLu().solve(rhs);
}

double commutatorNorm(const MatrixXcd& a, const MatrixXcd& b) {
  const double scale = std::max(
      {1e-300, a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff()});
  return (a * b - b * a).cwiseAbs().maxCoeff() / scale;
}

}  // namespace bispec
