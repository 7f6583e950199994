#include "bispec/counting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace bispec {

namespace {

void checkInput(const std::vector<int>& m, const std::vector<int>& n) {
  for (int v : m)
    if (v < 0) throw Error("weightDim: negative entry");
  for (int v : n)
    if (v < 0) throw Error("weightDim: negative entry");
  if (std::accumulate(m.begin(), m.end(), 0) != std::accumulate(n.begin(), n.end(), 0))
    throw Error("weightDim: row/column sums mismatch");
}

// Enumerate compositions of `total` into `parts` parts bounded by `caps`.
void compositions(int total, int idx, std::vector<int>& cur, const std::vector<int>& caps,
                  const std::function<void(const std::vector<int>&)>& emit) {
  const int parts = static_cast<int>(caps.size());
  if (idx == parts - 1) {
    if (total <= caps[idx]) {
      cur[idx] = total;
      emit(cur);
    }
    return;
  }
  for (int v = 0; v <= std::min(total, caps[idx]); ++v) {
    cur[idx] = v;
    compositions(total - v, idx + 1, cur, caps, emit);
  }
}

}  // namespace

std::int64_t weightDim(const std::vector<int>& m, const std::vector<int>& n) {
  checkInput(m, n);
  // DP over rows, state = residual column sums.
  std::map<std::vector<int>, std::int64_t> state{{n, 1}};
  for (int a = 0; a < static_cast<int>(m.size()); ++a) {
    std::map<std::vector<int>, std::int64_t> next;
    for (const auto& [residual, count] : state) {
      std::vector<int> row(n.size());
      compositions(m[a], 0, row, residual, [&](const std::vector<int>& r) {
        std::vector<int> rem = residual;
        for (size_t i = 0; i < rem.size(); ++i) rem[i] -= r[i];
        next[rem] += count;
      });
    }
    state = std::move(next);
  }
  const std::vector<int> zero(n.size(), 0);
  const auto it = state.find(zero);
  return it == state.end() ? 0 : it->second;
}

std::int64_t dFormula22(const std::vector<int>& n, const std::vector<int>& m) {
  if (n.size() != 2 || m.size() != 2) throw Error("dFormula22: needs N = M = 2");
  if (n[0] + n[1] != m[0] + m[1]) throw Error("dFormula22: totals mismatch");
  const int alpha = std::max(0, n[1] - m[0]);
  const int beta = std::min(m[1], n[1]);
  return std::max(0, beta - alpha + 1);
}

std::int64_t weightDimBruteForce(const std::vector<int>& m, const std::vector<int>& n) {
  checkInput(m, n);
  std::int64_t count = 0;
  std::vector<std::vector<int>> rows;
  std::function<void(int, std::vector<int>&)> rec = [&](int a, std::vector<int>& colResidual) {
    if (a == static_cast<int>(m.size())) {
      bool allZero = true;
      for (int v : colResidual) allZero = allZero && v == 0;
      if (allZero) ++count;
      return;
    }
    std::vector<int> row(n.size());
    compositions(m[a], 0, row, colResidual, [&](const std::vector<int>& r) {
      for (size_t i = 0; i < colResidual.size(); ++i) colResidual[i] -= r[i];
      rec(a + 1, colResidual);
      for (size_t i = 0; i < colResidual.size(); ++i) colResidual[i] += r[i];
    });
  };
  std::vector<int> residual = n;
  rec(0, residual);
  return count;
}

}  // namespace bispec
