#include "feduhd/assignment.h"

#include <algorithm>
#include <limits>

namespace feduhd {

// Shortest augmenting path (Jonker-Volgenant style potentials) on the
// zero-padded square matrix, minimising negated scores. Indices are 1-based
// inside the loop; slot 0 is the virtual source.
std::vector<int> optimal_assignment(const ScoreMatrix& scores) {
  const std::size_t n = std::max(scores.rows, scores.cols);
  std::vector<int> mapping(scores.rows, -1);
  if (n == 0) return mapping;

  auto cost = [&](std::size_t i, std::size_t j) -> double {
    if (i >= scores.rows || j >= scores.cols) return 0.0;
    return -scores(i, j);
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t row = p[j] - 1;
    const std::size_t col = j - 1;
    if (row < scores.rows && col < scores.cols) mapping[row] = static_cast<int>(col);
  }
  return mapping;
}

double assignment_total(const ScoreMatrix& scores, const std::vector<int>& mapping) {
  double total = 0.0;
  for (std::size_t r = 0; r < mapping.size(); ++r) {
    if (mapping[r] >= 0) total += scores(r, static_cast<std::size_t>(mapping[r]));
  }
  return total;
}

}  // namespace feduhd
