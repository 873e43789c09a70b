#include <doctest.h>

#include <random>

#include "hydrodg/linalg.hpp"
#include "test_util.hpp"

using namespace hydrodg;

TEST_CASE("duplicate triplets sum on finalization") {
  BlockSparseMatrix A(2, 2);
  A.add(0, 0, 1.0);
  A.add(0, 0, 2.0);
  A.finalize();
  CHECK(A.to_dense()(0, 0) == doctest::Approx(3.0));
  CHECK(A.matrix().nonZeros() == 1);
}

TEST_CASE("empty triplet list gives the zero matrix") {
  BlockSparseMatrix A(4, 4);
  A.finalize();
  CHECK(A.to_dense().isZero());
  const Vector x = Vector::Ones(4);
  CHECK(A.apply(x).isZero());
}

TEST_CASE("single entry matvec") {
  BlockSparseMatrix A(2, 2);
  A.add(1, 0, 5.0);
  A.finalize();
  Vector x(2);
  x << 3.0, 4.0;
  const Vector y = A.apply(x);
  CHECK(y[0] == doctest::Approx(0.0));
  CHECK(y[1] == doctest::Approx(15.0));
}

TEST_CASE("out-of-range indices are rejected") {
  BlockSparseMatrix A(2, 3);
  CHECK_THROWS_AS(A.add(2, 0, 1.0), ConfigError);
  CHECK_THROWS_AS(A.add(0, 3, 1.0), ConfigError);
}

TEST_CASE("spmv equals dense product on random matrices") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> size_dist(1, 64);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = size_dist(rng), m = size_dist(rng);
    BlockSparseMatrix A(n, m);
    DenseMatrix dense = DenseMatrix::Zero(n, m);
    std::uniform_int_distribution<int> ri(0, n - 1), ci(0, m - 1);
    const int entries = 3 * std::max(n, m);
    for (int e = 0; e < entries; ++e) {
      const int r = ri(rng), c = ci(rng);
      const double v = val(rng);
      A.add(r, c, v);
      dense(r, c) += v;
    }
    A.finalize();
    Vector x(m);
    for (int i = 0; i < m; ++i) x[i] = val(rng);
    CHECK((A.apply(x) - dense * x).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(testutil::rel_diff(A.to_dense(), dense) < 1e-15);
  }
}

TEST_CASE("value rebuild on a frozen sparsity") {
  BlockSparseMatrix A(3, 3);
  A.add(0, 0, 1.0);
  A.add(1, 2, 2.0);
  A.add(0, 0, 0.5);
  A.finalize();
  A.rebuild_begin();
  A.add(0, 0, 4.0);
  A.add(1, 2, -1.0);
  A.add(0, 0, 1.0);
  A.rebuild_end();
  CHECK(A.to_dense()(0, 0) == doctest::Approx(5.0));
  CHECK(A.to_dense()(1, 2) == doctest::Approx(-1.0));
}

TEST_CASE("solve: identity and diagonal") {
  BlockSparseMatrix I(3, 3);
  for (int i = 0; i < 3; ++i) I.add(i, i, 1.0);
  I.finalize();
  Vector b(3);
  b << 1.0, -2.0, 0.5;
  CHECK((solve(I, b) - b).norm() < 1e-14);

  BlockSparseMatrix D(2, 2);
  D.add(0, 0, 2.0);
  D.add(1, 1, 4.0);
  D.finalize();
  Vector b2(2);
  b2 << 2.0, 8.0;
  const Vector x = solve(D, b2);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("solve recovers a constructed solution of a random SPD system") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const int n = 50;
  DenseMatrix B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = val(rng);
  const DenseMatrix spd = B * B.transpose() + n * DenseMatrix::Identity(n, n);
  BlockSparseMatrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.add(i, j, spd(i, j));
  A.finalize();
  Vector x_ref(n);
  for (int i = 0; i < n; ++i) x_ref[i] = val(rng);
  const Vector x = solve(A, spd * x_ref);
  CHECK((x - x_ref).norm() < 1e-8);
}

TEST_CASE("singular matrix reports solver failure") {
  BlockSparseMatrix A(2, 2);
  A.add(0, 0, 1.0);
  A.add(0, 1, 1.0);
  A.add(1, 0, 1.0);
  A.add(1, 1, 1.0);
  A.finalize();
  Vector b(2);
  b << 1.0, 0.0;
  CHECK_THROWS_AS(solve(A, b), NumericalError);
}

TEST_CASE("kron_block_sum: diagonal scaling") {
  const std::vector<std::vector<double>> scalars = {{2.0, 3.0}};
  const std::vector<DenseMatrix> blocks = {DenseMatrix::Identity(2, 2)};
  const BlockSparseMatrix M = kron_block_sum(scalars, blocks);
  DenseMatrix expected = DenseMatrix::Zero(4, 4);
  expected.diagonal() << 2.0, 2.0, 3.0, 3.0;
  CHECK(testutil::rel_diff(M.to_dense(), expected) < 1e-15);
}

TEST_CASE("kron_block_sum: zero second part drops out") {
  DenseMatrix m1(1, 1), m2(1, 1);
  m1 << 7.0;
  m2 << 5.0;
  const BlockSparseMatrix M = kron_block_sum({{1.0}, {0.0}}, {m1, m2});
  CHECK(M.to_dense()(0, 0) == doctest::Approx(7.0));
}

TEST_CASE("kron_block_sum equals explicit per-element assembly on random data") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const int K = 8, n = 3, S = 2;
  std::vector<std::vector<double>> scalars(S, std::vector<double>(K));
  std::vector<DenseMatrix> blocks(S, DenseMatrix(n, n));
  for (int s = 0; s < S; ++s) {
    for (int k = 0; k < K; ++k) scalars[s][k] = val(rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) blocks[s](i, j) = val(rng);
  }
  const BlockSparseMatrix M = kron_block_sum(scalars, blocks);
  DenseMatrix expected = DenseMatrix::Zero(K * n, K * n);
  for (int k = 0; k < K; ++k)
    for (int s = 0; s < S; ++s)
      expected.block(k * n, k * n, n, n) += scalars[s][k] * blocks[s];
  CHECK(testutil::rel_diff(M.to_dense(), expected) < 1e-13);
}

TEST_CASE("kron_block_sum rejects shape mismatches") {
  CHECK_THROWS_AS(kron_block_sum({{1.0}, {1.0, 2.0}},
                                 {DenseMatrix::Identity(2, 2), DenseMatrix::Identity(2, 2)}),
                  ConfigError);
  CHECK_THROWS_AS(kron_block_sum({{1.0}, {1.0}},
                                 {DenseMatrix::Identity(2, 2), DenseMatrix::Identity(3, 3)}),
                  ConfigError);
}

TEST_CASE("block operator matches its dense expansion") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  BlockOperator op(4, 4, 2, 2);
  op.init_diag();
  for (int k = 0; k < 4; ++k) op.diag(k) = DenseMatrix::NullaryExpr(2, 2, [&] { return val(rng); });
  op.add_block(1, 2, DenseMatrix::NullaryExpr(2, 2, [&] { return val(rng); }));
  op.add_block(1, 2, DenseMatrix::NullaryExpr(2, 2, [&] { return val(rng); }));
  op.add_block(3, 0, DenseMatrix::NullaryExpr(2, 2, [&] { return val(rng); }));
  const DenseMatrix dense = op.to_dense();
  Vector x(8);
  for (int i = 0; i < 8; ++i) x[i] = val(rng);
  CHECK((op.apply(x) - dense * x).cwiseAbs().maxCoeff() < 1e-13);

  BlockSparseMatrix sparse(8, 8);
  op.add_to_triplets(sparse, 0, 0);
  sparse.finalize();
  CHECK(testutil::rel_diff(sparse.to_dense(), dense) < 1e-15);
}

TEST_CASE("coefficient vector layout invariant") {
  CHECK_THROWS_AS(CoeffVector(Vector::Zero(5), 2), ConfigError);
  CoeffVector c(3, 2);
  c.at(1, 0) = 4.0;
  CHECK(c.data[2] == doctest::Approx(4.0));
  CHECK(c.num_blocks() == 3);
}
