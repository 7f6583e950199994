#include "bispec/quasi.hpp"

#include <algorithm>
#include <cmath>

namespace bispec {

void QuasiPolySumX::add(Complex exponent, const RationalFn& part, double delta) {
  if (part.isZero()) return;
  for (auto& [e, r] : terms_) {
    if (std::abs(e - exponent) <= delta) {
      r = r + part;
      return;
    }
  }
  terms_.push_back({exponent, part});
}

bool QuasiPolySumX::approxZero(double relTol) const {
  for (const auto& [e, r] : terms_)
    if (!r.isZero() && r.num().maxAbsCoeff() > relTol) return false;
  return true;
}

double QuasiPolySumX::residualNorm(double scale) const {
  double m = 0.0;
  for (const auto& [e, r] : terms_) m = std::max(m, r.num().maxAbsCoeff());
  return m / std::max(scale, 1e-300);
}

void ExpPolySum::add(const BranchedBase& base, const Poly& part, double delta) {
  if (part.isZero()) return;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (sameBase(terms_[i].first, base, delta)) {
      terms_[i].second = terms_[i].second + part;
      if (terms_[i].second.isZero()) terms_.erase(terms_.begin() + i);
      return;
    }
  }
  terms_.push_back({base, part});
}

Complex ExpPolySum::evalAt(Complex u) const {
  Complex acc(0.0);
  for (const auto& [b, p] : terms_) acc += b.pow(u) * bispec::evalAt(p, u);
  return acc;
}

ExpPolySum operator+(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolySum out = a;
  for (const auto& [base, p] : b.terms()) out.add(base, p);
  return out;
}

ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolySum out;
  for (const auto& [ba, pa] : a.terms())
    for (const auto& [bb, pb] : b.terms()) out.add(ba * bb, pa * pb);
  return out;
}

ExpPolySum operator*(Complex s, const ExpPolySum& a) {
  ExpPolySum out;
  for (const auto& [b, p] : a.terms()) out.add(b, s * p);
  return out;
}

ExpPolySum tauShift(const ExpPolySum& a) {
  ExpPolySum out;
  for (const auto& [b, p] : a.terms()) out.add(b, b.value * shiftByOne(p));
  return out;
}

ExpPolySum expPolyDet(const std::vector<std::vector<ExpPolySum>>& m, int bound) {
  const int n = static_cast<int>(m.size());
  if (n > bound) throw Error("expPolyDet: desk-scale exceeded");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw Error("expPolyDet: non-square matrix");
  ExpPolySum det;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    ExpPolySum term(BranchedBase(Complex(1.0), 0.0),
                    Poly::constant(inv % 2 ? Complex(-1.0) : Complex(1.0)));
    for (int i = 0; i < n; ++i) term = term * m[i][perm[i]];
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace bispec
