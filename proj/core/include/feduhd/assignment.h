#pragma once

#include <cstddef>
#include <vector>

namespace feduhd {

// Dense row-major matrix of assignment scores.
struct ScoreMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  ScoreMatrix() = default;
  ScoreMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c) {}

  [[nodiscard]] double operator()(std::size_t r, std::size_t c) const {
    return values[r * cols + c];
  }
  double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

// Maximum-weight one-to-one matching on a rectangular matrix. Result[r] is
// the column matched to row r, or -1; exactly min(rows, cols) rows are
// matched. Solved with the O(n^3) shortest augmenting path method on the
// matrix zero-padded to square.
[[nodiscard]] std::vector<int> optimal_assignment(const ScoreMatrix& scores);

// Sum of the selected entries.
[[nodiscard]] double assignment_total(const ScoreMatrix& scores,
                                      const std::vector<int>& mapping);

}  // namespace feduhd
