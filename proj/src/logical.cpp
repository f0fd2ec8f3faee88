#include "bcn/logical.hpp"

#include <numeric>
#include <string>

namespace bcn {

Index checked_mul(Index a, Index b) {
  Index out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw DimensionOverflowError("dimension product " + std::to_string(a) +
                                 " * " + std::to_string(b) +
                                 " exceeds the index range");
  }
  return out;
}

CanonicalVector::CanonicalVector(Index dim_, Index index_)
    : dim(dim_), index(index_) {
  if (dim < 1) {
    throw DomainError("canonical vector dimension must be positive, got " +
                      std::to_string(dim));
  }
  if (index < 1 || index > dim) {
    throw DomainError("canonical index " + std::to_string(index) +
                      " out of range [1, " + std::to_string(dim) + "]");
  }
}

CanonicalVector stp_vec(const CanonicalVector& x, const CanonicalVector& y) {
  const Index dim = checked_mul(x.dim, y.dim);
  return {dim, (x.index - 1) * y.dim + y.index};
}

LogicalMatrix::LogicalMatrix(Index rows, std::vector<Index> col_index)
    : rows_(rows), col_index_(std::move(col_index)) {
  if (rows_ < 1) {
    throw DomainError("logical matrix row count must be positive, got " +
                      std::to_string(rows_));
  }
  for (const Index v : col_index_) {
    if (v < 1 || v > rows_) {
      throw DomainError("column entry " + std::to_string(v) +
                        " out of range [1, " + std::to_string(rows_) + "]");
    }
  }
}

LogicalMatrix LogicalMatrix::identity(Index k) {
  std::vector<Index> cols(static_cast<std::size_t>(k));
  std::iota(cols.begin(), cols.end(), Index{1});
  return {k, std::move(cols)};
}

LogicalMatrix LogicalMatrix::from_vector(const CanonicalVector& v) {
  return {v.dim, {v.index}};
}

Index LogicalMatrix::col(Index j) const {
  if (j < 1 || j > cols()) {
    throw DomainError("column index " + std::to_string(j) +
                      " out of range [1, " + std::to_string(cols()) + "]");
  }
  return col_index_[static_cast<std::size_t>(j - 1)];
}

LogicalMatrix stp(const LogicalMatrix& lhs, const LogicalMatrix& rhs) {
  const Index c1 = lhs.cols();
  const Index r2 = rhs.rows();
  const Index t = checked_mul(c1 / std::gcd(c1, r2), r2);
  const Index p = t / c1;  // lhs is padded with I_p
  const Index q = t / r2;  // rhs is padded with I_q

  const Index out_rows = checked_mul(lhs.rows(), p);
  const Index out_cols = checked_mul(rhs.cols(), q);

  // Column (j2, s2) of rhs (x) I_q selects row (b-1)q + s2 of the padded
  // lhs, whose columns are (a_j - 1)p + s laid out j-major.
  std::vector<Index> out(static_cast<std::size_t>(out_cols));
  std::size_t w = 0;
  for (Index j2 = 1; j2 <= rhs.cols(); ++j2) {
    const Index b = rhs.col(j2);
    for (Index s2 = 1; s2 <= q; ++s2) {
      const Index v = (b - 1) * q + s2;  // row hit in lhs (x) I_p, in [1, t]
      const Index j1 = (v - 1) / p + 1;
      const Index s1 = (v - 1) % p + 1;
      out[w++] = (lhs.col(j1) - 1) * p + s1;
    }
  }
  return {out_rows, std::move(out)};
}

LogicalMatrix kron(const LogicalMatrix& lhs, const LogicalMatrix& rhs) {
  const Index out_rows = checked_mul(lhs.rows(), rhs.rows());
  const Index out_cols = checked_mul(lhs.cols(), rhs.cols());
  std::vector<Index> out(static_cast<std::size_t>(out_cols));
  std::size_t w = 0;
  for (Index jl = 1; jl <= lhs.cols(); ++jl) {
    const Index base = (lhs.col(jl) - 1) * rhs.rows();
    for (Index jr = 1; jr <= rhs.cols(); ++jr) {
      out[w++] = base + rhs.col(jr);
    }
  }
  return {out_rows, std::move(out)};
}

LogicalMatrix swap_matrix(Index m, Index n) {
  const Index mn = checked_mul(m, n);
  std::vector<Index> out(static_cast<std::size_t>(mn));
  for (Index i = 1; i <= m; ++i) {
    for (Index j = 1; j <= n; ++j) {
      out[static_cast<std::size_t>((i - 1) * n + j - 1)] = (j - 1) * m + i;
    }
  }
  return {mn, std::move(out)};
}

LogicalMatrix power_reducing_matrix(Index n) {
  const Index nn = checked_mul(n, n);
  std::vector<Index> out(static_cast<std::size_t>(n));
  for (Index i = 1; i <= n; ++i) {
    out[static_cast<std::size_t>(i - 1)] = (i - 1) * n + i;
  }
  return {nn, std::move(out)};
}

LogicalMatrix columnwise_stp(const LogicalMatrix& a, const LogicalMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DimensionMismatchError(
        "columnwise pairing needs equal column counts, got " +
        std::to_string(a.cols()) + " and " + std::to_string(b.cols()));
  }
  const Index out_rows = checked_mul(a.rows(), b.rows());
  std::vector<Index> out(static_cast<std::size_t>(a.cols()));
  for (Index j = 1; j <= a.cols(); ++j) {
    out[static_cast<std::size_t>(j - 1)] = (a.col(j) - 1) * b.rows() + b.col(j);
  }
  return {out_rows, std::move(out)};
}

}  // namespace bcn
