#pragma once

// Dense 0/1 matrix oracle used only by tests: implements the Kronecker
// padding definition of the semi-tensor product literally, so the index
// arithmetic in the engine can be checked against it.

#include <numeric>
#include <random>
#include <vector>

#include "bcn/logical.hpp"

namespace bcn::testing {

struct Dense {
  Index rows = 0;
  Index cols = 0;
  std::vector<int> data;  // row-major

  int& at(Index r, Index c) {
    return data[static_cast<std::size_t>((r - 1) * cols + (c - 1))];
  }
  int at(Index r, Index c) const {
    return data[static_cast<std::size_t>((r - 1) * cols + (c - 1))];
  }

  bool operator==(const Dense&) const = default;
};

inline Dense dense_identity(Index k) {
  Dense m{k, k, std::vector<int>(static_cast<std::size_t>(k * k), 0)};
  for (Index i = 1; i <= k; ++i) m.at(i, i) = 1;
  return m;
}

inline Dense to_dense(const LogicalMatrix& lm) {
  Dense m{lm.rows(), lm.cols(),
          std::vector<int>(static_cast<std::size_t>(lm.rows() * lm.cols()), 0)};
  for (Index j = 1; j <= lm.cols(); ++j) m.at(lm.col(j), j) = 1;
  return m;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense out{a.rows, b.cols,
            std::vector<int>(static_cast<std::size_t>(a.rows * b.cols), 0)};
  for (Index i = 1; i <= a.rows; ++i) {
    for (Index k = 1; k <= a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (Index j = 1; j <= b.cols; ++j) {
        out.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  }
  return out;
}

inline Dense dense_kron(const Dense& a, const Dense& b) {
  Dense out{a.rows * b.rows, a.cols * b.cols,
            std::vector<int>(
                static_cast<std::size_t>(a.rows * b.rows * a.cols * b.cols),
                0)};
  for (Index i = 1; i <= a.rows; ++i) {
    for (Index j = 1; j <= a.cols; ++j) {
      if (a.at(i, j) == 0) continue;
      for (Index r = 1; r <= b.rows; ++r) {
        for (Index c = 1; c <= b.cols; ++c) {
          out.at((i - 1) * b.rows + r, (j - 1) * b.cols + c) = b.at(r, c);
        }
      }
    }
  }
  return out;
}

/// Literal (A (x) I_{T/c1})(B (x) I_{T/r2}) with T = lcm.
inline Dense dense_stp(const Dense& a, const Dense& b) {
  const Index t = std::lcm(a.cols, b.rows);
  return dense_mul(dense_kron(a, dense_identity(t / a.cols)),
                   dense_kron(b, dense_identity(t / b.rows)));
}

inline LogicalMatrix random_logical(std::mt19937_64& rng, Index rows,
                                    Index cols) {
  std::uniform_int_distribution<Index> pick(1, rows);
  std::vector<Index> idx(static_cast<std::size_t>(cols));
  for (auto& v : idx) v = pick(rng);
  return {rows, std::move(idx)};
}

}  // namespace bcn::testing
