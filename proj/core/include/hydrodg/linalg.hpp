#ifndef HYDRODG_LINALG_HPP
#define HYDRODG_LINALG_HPP

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <memory>
#include <vector>

#include "hydrodg/types.hpp"

namespace hydrodg {

/// DG representation vector: element-major, basis-minor layout, entry
/// (k, i) at position k*block_size + i.
struct CoeffVector {
  Vector data;
  int block_size = 1;

  CoeffVector() = default;
  CoeffVector(int num_blocks, int block)
      : data(Vector::Zero(static_cast<long>(num_blocks) * block)),
        block_size(block) {}
  CoeffVector(Vector values, int block) : data(std::move(values)), block_size(block) {
    if (block <= 0 || data.size() % block != 0)
      throw ConfigError("CoeffVector: length not divisible by block size");
  }

  int num_blocks() const { return static_cast<int>(data.size()) / block_size; }
  double& at(int k, int i) { return data[static_cast<long>(k) * block_size + i]; }
  double at(int k, int i) const { return data[static_cast<long>(k) * block_size + i]; }
  auto block(int k) { return data.segment(static_cast<long>(k) * block_size, block_size); }
  auto block(int k) const {
    return data.segment(static_cast<long>(k) * block_size, block_size);
  }
};

/// Sparse matrix built from coordinate triplets. Duplicate (row, col) pairs
/// sum on finalization; the finalized structure is immutable but values can
/// be rebuilt through an identical insertion sequence.
class BlockSparseMatrix {
 public:
  BlockSparseMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add(int row, int col, double value);
  void finalize();
  bool finalized() const { return finalized_; }

  /// Restarts value accumulation on the frozen sparsity; add() calls must
  /// repeat the original insertion sequence, then rebuild_end().
  void rebuild_begin();
  void rebuild_end();

  Vector apply(const Vector& x) const;

  const Eigen::SparseMatrix<double>& matrix() const;
  DenseMatrix to_dense() const;

 private:
  int rows_, cols_;
  bool finalized_ = false;
  bool rebuilding_ = false;
  std::size_t cursor_ = 0;
  std::vector<Eigen::Triplet<double>> triplets_;
  std::vector<long> slot_;  // insertion index -> compressed value slot
  Eigen::SparseMatrix<double> mat_;
};

/// Direct sparse factorization honoring the residual contract
/// ||Ax - b|| <= 1e-10 * max(1, ||b||). Throws NumericalError with the
/// achieved residual otherwise.
class DirectSolver {
 public:
  void factorize(const BlockSparseMatrix& A);
  void factorize(const Eigen::SparseMatrix<double>& A);
  bool ready() const { return lu_ != nullptr; }
  Vector solve(const Vector& b) const;

 private:
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
  const Eigen::SparseMatrix<double>* mat_ = nullptr;
  Eigen::SparseMatrix<double> owned_;
};

/// One-shot solve of A x = b under the same residual contract.
Vector solve(const BlockSparseMatrix& A, const Vector& b);

/// Block-diagonal matrix whose k-th block is sum_s scalars[s][k] * blocks[s].
/// All scalar arrays must have length K and all blocks identical shape.
BlockSparseMatrix kron_block_sum(const std::vector<std::vector<double>>& scalars,
                                 const std::vector<DenseMatrix>& blocks);

/// Global operator in block form: a block-diagonal part (one dense block per
/// row block, optional) plus off-diagonal dense blocks from edge coupling.
/// Row blocks have size block_rows, column blocks block_cols.
class BlockOperator {
 public:
  BlockOperator() = default;
  BlockOperator(int row_blocks, int col_blocks, int block_rows, int block_cols)
      : row_blocks_(row_blocks),
        col_blocks_(col_blocks),
        block_rows_(block_rows),
        block_cols_(block_cols) {}

  void init_diag();  // allocates zero diagonal blocks (square block grid)
  DenseMatrix& diag(int k) { return diag_[k]; }
  const DenseMatrix& diag(int k) const { return diag_[k]; }
  bool has_diag() const { return !diag_.empty(); }

  /// Appends an off-diagonal block; (rb, cb) pairs may repeat and sum.
  void add_block(int rb, int cb, DenseMatrix block);

  int row_blocks() const { return row_blocks_; }
  int col_blocks() const { return col_blocks_; }
  int rows() const { return row_blocks_ * block_rows_; }
  int cols() const { return col_blocks_ * block_cols_; }

  Vector apply(const Vector& x) const;
  void apply_add(const Vector& x, Vector& y, double scale = 1.0) const;

  BlockOperator& operator+=(const BlockOperator& other);
  BlockOperator& operator-=(const BlockOperator& other);
  BlockOperator& scale(double factor);

  DenseMatrix to_dense() const;
  void add_to_triplets(BlockSparseMatrix& out, int row_offset, int col_offset,
                       double scale = 1.0) const;

  struct OffBlock {
    int rb, cb;
    DenseMatrix B;
  };
  const std::vector<OffBlock>& off_blocks() const { return off_; }

 private:
  int row_blocks_ = 0, col_blocks_ = 0, block_rows_ = 0, block_cols_ = 0;
  std::vector<DenseMatrix> diag_;
  std::vector<OffBlock> off_;
};

}  // namespace hydrodg

#endif
