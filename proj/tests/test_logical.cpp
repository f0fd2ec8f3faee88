#include <doctest.h>

#include "bcn/logical.hpp"
#include "support/dense.hpp"

using namespace bcn;
using namespace bcn::testing;

TEST_CASE("canonical vector validation") {
  CHECK_THROWS_AS(CanonicalVector(3, 0), DomainError);
  CHECK_THROWS_AS(CanonicalVector(3, 4), DomainError);
  CHECK(CanonicalVector(3, 3) == CanonicalVector(3, 3));
  CHECK(CanonicalVector(3, 3) != CanonicalVector(4, 3));
}

TEST_CASE("stp_vec index formula") {
  CHECK(stp_vec({3, 2}, {2, 1}) == CanonicalVector{6, 3});
  CHECK(stp_vec({7, 1}, {5, 1}) == CanonicalVector{35, 1});
  // cross-check against the matrix-level product for all m, n <= 5
  for (Index m = 1; m <= 5; ++m) {
    for (Index n = 1; n <= 5; ++n) {
      for (Index i = 1; i <= m; ++i) {
        for (Index j = 1; j <= n; ++j) {
          const auto via_matrix =
              stp(LogicalMatrix::from_vector({m, i}),
                  LogicalMatrix::from_vector({n, j}));
          const auto direct = stp_vec({m, i}, {n, j});
          CHECK(via_matrix.rows() == direct.dim);
          CHECK(via_matrix.col(1) == direct.index);
        }
      }
    }
  }
}

TEST_CASE("stp of identities and conformable composition") {
  CHECK(stp(LogicalMatrix::identity(2), LogicalMatrix::identity(3)) ==
        LogicalMatrix::identity(6));
  const LogicalMatrix swap2(2, {2, 1});
  CHECK(stp(swap2, LogicalMatrix(2, {1, 2})) == LogicalMatrix(2, {2, 1}));
  // conformable case is plain index composition
  const LogicalMatrix a(3, {2, 3, 1, 2});
  const LogicalMatrix b(4, {4, 1, 3});
  const LogicalMatrix ab = stp(a, b);
  REQUIRE(ab.rows() == 3);
  REQUIRE(ab.cols() == 3);
  for (Index j = 1; j <= 3; ++j) CHECK(ab.col(j) == a.col(b.col(j)));
}

TEST_CASE("stp matches the dense Kronecker oracle") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<Index> dim(1, 16);
  for (int round = 0; round < 300; ++round) {
    const auto a = random_logical(rng, dim(rng), dim(rng));
    const auto b = random_logical(rng, dim(rng), dim(rng));
    CHECK(to_dense(stp(a, b)) == dense_stp(to_dense(a), to_dense(b)));
  }
}

TEST_CASE("kron basics and dense oracle") {
  CHECK(kron(LogicalMatrix::identity(2), LogicalMatrix::identity(2)) ==
        LogicalMatrix::identity(4));
  CHECK(kron(LogicalMatrix(2, {2}), LogicalMatrix(2, {1})) ==
        LogicalMatrix(4, {3}));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Index> dim(1, 8);
  for (int round = 0; round < 200; ++round) {
    const auto a = random_logical(rng, dim(rng), dim(rng));
    const auto b = random_logical(rng, dim(rng), dim(rng));
    CHECK(to_dense(kron(a, b)) == dense_kron(to_dense(a), to_dense(b)));
  }
}

TEST_CASE("swap matrix exchanges canonical factors") {
  const auto w22 = swap_matrix(2, 2);
  CHECK(w22.col(1) == 1);
  CHECK(w22.col(2) == 3);
  CHECK(w22.col(3) == 2);
  CHECK(w22.col(4) == 4);
  CHECK(swap_matrix(1, 5) == LogicalMatrix::identity(5));
  CHECK(swap_matrix(5, 1) == LogicalMatrix::identity(5));
  for (Index m = 1; m <= 6; ++m) {
    for (Index n = 1; n <= 6; ++n) {
      const auto w = swap_matrix(m, n);
      for (Index i = 1; i <= m; ++i) {
        for (Index j = 1; j <= n; ++j) {
          const auto xy = stp_vec({m, i}, {n, j});
          CHECK(w.col(xy.index) == stp_vec({n, j}, {m, i}).index);
        }
      }
      // involution: W(m,n) then W(n,m) is the identity
      CHECK(stp(swap_matrix(n, m), w) == LogicalMatrix::identity(m * n));
    }
  }
}

TEST_CASE("power-reducing matrix duplicates canonical vectors") {
  CHECK(power_reducing_matrix(2) == LogicalMatrix(4, {1, 4}));
  CHECK(power_reducing_matrix(3) == LogicalMatrix(9, {1, 5, 9}));
  for (Index n = 1; n <= 10; ++n) {
    const auto phi = power_reducing_matrix(n);
    for (Index i = 1; i <= n; ++i) {
      CHECK(phi.col(i) == stp_vec({n, i}, {n, i}).index);
    }
  }
}

TEST_CASE("columnwise pairing") {
  CHECK(columnwise_stp(LogicalMatrix(2, {1, 2}), LogicalMatrix(2, {1, 2})) ==
        LogicalMatrix(4, {1, 4}));
  CHECK(columnwise_stp(LogicalMatrix(2, {2}), LogicalMatrix(3, {1})) ==
        LogicalMatrix(6, {4}));
  CHECK_THROWS_AS(
      columnwise_stp(LogicalMatrix(2, {1, 2}), LogicalMatrix(2, {1})),
      DimensionMismatchError);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Index> dim(1, 9);
  for (int round = 0; round < 100; ++round) {
    const Index cols = dim(rng);
    const auto a = random_logical(rng, dim(rng), cols);
    const auto b = random_logical(rng, dim(rng), cols);
    const auto paired = columnwise_stp(a, b);
    for (Index j = 1; j <= cols; ++j) {
      CHECK(paired.column(j) == stp_vec(a.column(j), b.column(j)));
    }
  }
}

TEST_CASE("stp associativity") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<Index> dim(1, 6);
  for (int round = 0; round < 200; ++round) {
    const auto a = random_logical(rng, dim(rng), dim(rng));
    const auto b = random_logical(rng, dim(rng), dim(rng));
    const auto c = random_logical(rng, dim(rng), dim(rng));
    CHECK(stp(stp(a, b), c) == stp(a, stp(b, c)));
  }
}

TEST_CASE("dimension overflow is detected") {
  CHECK_THROWS_AS(checked_mul(Index{1} << 40, Index{1} << 40),
                  DimensionOverflowError);
  const LogicalMatrix huge(Index{1} << 32, {1});
  CHECK_THROWS_AS(kron(huge, huge), DimensionOverflowError);
}
