#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bcn/errors.hpp"

namespace bcn {

using Index = std::int64_t;

/// Multiplies two positive dimensions, throwing DimensionOverflowError on
/// wraparound.
Index checked_mul(Index a, Index b);

/// The i-th column of the k-dimensional identity, stored as the pair (k, i)
/// with a 1-based index.
struct CanonicalVector {
  Index dim;
  Index index;

  CanonicalVector(Index dim_, Index index_);

  bool operator==(const CanonicalVector&) const = default;
};

/// Semi-tensor product of two canonical vectors:
/// delta^i_m x delta^j_n = delta^{(i-1)n+j}_{mn}.
CanonicalVector stp_vec(const CanonicalVector& x, const CanonicalVector& y);

/// A k x n matrix whose every column is a canonical vector of size k,
/// stored as the n column indices (1-based).
class LogicalMatrix {
 public:
  LogicalMatrix(Index rows, std::vector<Index> col_index);

  static LogicalMatrix identity(Index k);
  static LogicalMatrix from_vector(const CanonicalVector& v);

  Index rows() const { return rows_; }
  Index cols() const { return static_cast<Index>(col_index_.size()); }

  /// 1-based column access: returns the 1-based row index of the single
  /// nonzero entry in column j.
  Index col(Index j) const;

  CanonicalVector column(Index j) const { return {rows_, col(j)}; }

  std::span<const Index> col_index() const { return col_index_; }

  bool operator==(const LogicalMatrix&) const = default;

 private:
  Index rows_;
  std::vector<Index> col_index_;
};

/// Left semi-tensor product (L1 (x) I_{T/c1})(L2 (x) I_{T/r2}),
/// T = lcm(cols(L1), rows(L2)), computed entirely in index form.
LogicalMatrix stp(const LogicalMatrix& lhs, const LogicalMatrix& rhs);

/// Kronecker product in index form.
LogicalMatrix kron(const LogicalMatrix& lhs, const LogicalMatrix& rhs);

/// Swap matrix W of size mn x mn with W (x |x| y) = y |x| x for all
/// canonical x of size m and y of size n.
LogicalMatrix swap_matrix(Index m, Index n);

/// Power-reducing matrix Phi of size n^2 x n with Phi x = x |x| x.
LogicalMatrix power_reducing_matrix(Index n);

/// Column-by-column semi-tensor pairing of two matrices with the same
/// column count; column j of the result is column_j(a) |x| column_j(b).
LogicalMatrix columnwise_stp(const LogicalMatrix& a, const LogicalMatrix& b);

}  // namespace bcn
