#include "bispec/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace bispec {

Staircase staircaseEliminate(const MatrixXcd& a, double rankTol) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  MatrixXcd b = a;
  MatrixXcd t = MatrixXcd::Identity(rows, rows);
  std::vector<bool> done(rows, false);

  auto rescale = [&](int r) {
    const double n = b.row(r).cwiseAbs().maxCoeff();
    if (n > 0.0) {
      b.row(r) /= n;
      t.row(r) /= n;
    }
  };
  for (int r = 0; r < rows; ++r) rescale(r);

  Staircase out;
  for (int c = 0; c < cols && static_cast<int>(out.pivots.size()) < rows; ++c) {
    int best = -1;
    double bestAbs = 0.0;
    for (int r = 0; r < rows; ++r) {
      if (done[r]) continue;
      const double v = std::abs(b(r, c));
      if (v > bestAbs) {
        bestAbs = v;
        best = r;
      }
    }
    if (best < 0 || bestAbs <= rankTol) continue;
    done[best] = true;
    out.pivots.push_back(c);
    out.pivotRows.push_back(best);
    for (int r = 0; r < rows; ++r) {
      if (done[r] && r != best) continue;
      if (r == best) continue;
      const Complex f = b(r, c) / b(best, c);
      b.row(r) -= f * b.row(best);
      t.row(r) -= f * t.row(best);
      rescale(r);
    }
  }
  out.reduced = b;
  out.transform = t;
  return out;
}

MatrixXcd nullspace(const MatrixXcd& a, double relTol) {
  if (a.rows() == 0) return MatrixXcd::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = relTol * (sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

int numericRank(const MatrixXcd& a, double relTol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  const double cut = relTol * (sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

}  // namespace bispec
