#include "hydrodg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hydrodg {

BlockSparseMatrix::BlockSparseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw ConfigError("BlockSparseMatrix: negative size");
}

void BlockSparseMatrix::add(int row, int col, double value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) {
    std::ostringstream os;
    os << "BlockSparseMatrix: index (" << row << ", " << col
       << ") out of range for " << rows_ << "x" << cols_;
    throw ConfigError(os.str());
  }
  if (rebuilding_) {
    if (cursor_ >= slot_.size())
      throw ConfigError("BlockSparseMatrix: rebuild exceeds frozen pattern");
    mat_.valuePtr()[slot_[cursor_++]] += value;
    return;
  }
  if (finalized_)
    throw ConfigError("BlockSparseMatrix: structure is frozen, use rebuild_begin");
  triplets_.emplace_back(row, col, value);
}

void BlockSparseMatrix::finalize() {
  if (finalized_) return;
  mat_.resize(rows_, cols_);
  mat_.setFromTriplets(triplets_.begin(), triplets_.end());
  mat_.makeCompressed();
  // Record the compressed slot of every insertion so that values can be
  // rebuilt later without re-sorting.
  slot_.resize(triplets_.size());
  const auto* outer = mat_.outerIndexPtr();
  const auto* inner = mat_.innerIndexPtr();
  for (std::size_t t = 0; t < triplets_.size(); ++t) {
    const int col = triplets_[t].col();
    const int row = triplets_[t].row();
    long lo = outer[col], hi = outer[col + 1];
    const auto* first = inner + lo;
    const auto* it = std::lower_bound(first, inner + hi, row);
    slot_[t] = lo + (it - first);
  }
  triplets_.clear();
  triplets_.shrink_to_fit();
  finalized_ = true;
}

void BlockSparseMatrix::rebuild_begin() {
  if (!finalized_) throw ConfigError("BlockSparseMatrix: rebuild before finalize");
  std::fill(mat_.valuePtr(), mat_.valuePtr() + mat_.nonZeros(), 0.0);
  rebuilding_ = true;
  cursor_ = 0;
}

void BlockSparseMatrix::rebuild_end() {
  if (cursor_ != slot_.size())
    throw ConfigError("BlockSparseMatrix: rebuild sequence incomplete");
  rebuilding_ = false;
}

Vector BlockSparseMatrix::apply(const Vector& x) const {
  if (!finalized_) throw ConfigError("BlockSparseMatrix: apply before finalize");
  return mat_ * x;
}

const Eigen::SparseMatrix<double>& BlockSparseMatrix::matrix() const {
  if (!finalized_) throw ConfigError("BlockSparseMatrix: matrix() before finalize");
  return mat_;
}

DenseMatrix BlockSparseMatrix::to_dense() const { return DenseMatrix(matrix()); }

void DirectSolver::factorize(const BlockSparseMatrix& A) {
  if (A.rows() != A.cols()) throw ConfigError("DirectSolver: matrix not square");
  mat_ = &A.matrix();
  lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
  lu_->compute(*mat_);
  if (lu_->info() != Eigen::Success)
    throw NumericalError("DirectSolver: factorization failed (singular or ill-conditioned matrix)");
}

void DirectSolver::factorize(const Eigen::SparseMatrix<double>& A) {
  owned_ = A;
  owned_.makeCompressed();
  mat_ = &owned_;
  lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
  lu_->compute(owned_);
  if (lu_->info() != Eigen::Success)
    throw NumericalError("DirectSolver: factorization failed (singular or ill-conditioned matrix)");
}

Vector DirectSolver::solve(const Vector& b) const {
  if (!lu_) throw ConfigError("DirectSolver: solve before factorize");
  Vector x = lu_->solve(b);
  const double residual = ((*mat_) * x - b).norm();
  const double bound = 1e-10 * std::max(1.0, b.norm());
  if (!(residual <= bound)) {
    std::ostringstream os;
    os << "DirectSolver: residual " << residual << " exceeds contract " << bound;
    throw NumericalError(os.str());
  }
  return x;
}

Vector solve(const BlockSparseMatrix& A, const Vector& b) {
  DirectSolver solver;
  solver.factorize(A);
  return solver.solve(b);
}

BlockSparseMatrix kron_block_sum(const std::vector<std::vector<double>>& scalars,
                                 const std::vector<DenseMatrix>& blocks) {
  if (scalars.size() != blocks.size() || blocks.empty())
    throw ConfigError("kron_block_sum: scalar/block count mismatch");
  const std::size_t K = scalars.front().size();
  const long n = blocks.front().rows();
  const long m = blocks.front().cols();
  for (const auto& s : scalars)
    if (s.size() != K) throw ConfigError("kron_block_sum: scalar array length mismatch");
  for (const auto& b : blocks)
    if (b.rows() != n || b.cols() != m)
      throw ConfigError("kron_block_sum: block shape mismatch");

  BlockSparseMatrix out(static_cast<int>(K * n), static_cast<int>(K * m));
  for (std::size_t k = 0; k < K; ++k) {
    DenseMatrix local = DenseMatrix::Zero(n, m);
    for (std::size_t s = 0; s < blocks.size(); ++s) local += scalars[s][k] * blocks[s];
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < m; ++j)
        out.add(static_cast<int>(k * n + i), static_cast<int>(k * m + j), local(i, j));
  }
  out.finalize();
  return out;
}

void BlockOperator::init_diag() {
  diag_.assign(row_blocks_, DenseMatrix::Zero(block_rows_, block_cols_));
}

void BlockOperator::add_block(int rb, int cb, DenseMatrix block) {
  off_.push_back({rb, cb, std::move(block)});
}

Vector BlockOperator::apply(const Vector& x) const {
  Vector y = Vector::Zero(rows());
  apply_add(x, y);
  return y;
}

void BlockOperator::apply_add(const Vector& x, Vector& y, double scale) const {
  if (x.size() != cols())
    throw ConfigError("BlockOperator: vector size mismatch in apply");
  if (has_diag()) {
    for (int k = 0; k < row_blocks_; ++k)
      y.segment(static_cast<long>(k) * block_rows_, block_rows_).noalias() +=
          scale * (diag_[k] * x.segment(static_cast<long>(k) * block_cols_, block_cols_));
  }
  for (const auto& e : off_)
    y.segment(static_cast<long>(e.rb) * block_rows_, block_rows_).noalias() +=
        scale * (e.B * x.segment(static_cast<long>(e.cb) * block_cols_, block_cols_));
}

BlockOperator& BlockOperator::operator+=(const BlockOperator& other) {
  if (other.has_diag()) {
    if (!has_diag()) init_diag();
    for (int k = 0; k < row_blocks_; ++k) diag_[k] += other.diag_[k];
  }
  off_.insert(off_.end(), other.off_.begin(), other.off_.end());
  return *this;
}

BlockOperator& BlockOperator::operator-=(const BlockOperator& other) {
  if (other.has_diag()) {
    if (!has_diag()) init_diag();
    for (int k = 0; k < row_blocks_; ++k) diag_[k] -= other.diag_[k];
  }
  for (const auto& e : other.off_) off_.push_back({e.rb, e.cb, -e.B});
  return *this;
}

BlockOperator& BlockOperator::scale(double factor) {
  for (auto& d : diag_) d *= factor;
  for (auto& e : off_) e.B *= factor;
  return *this;
}

DenseMatrix BlockOperator::to_dense() const {
  DenseMatrix out = DenseMatrix::Zero(rows(), cols());
  if (has_diag())
    for (int k = 0; k < row_blocks_; ++k)
      out.block(static_cast<long>(k) * block_rows_, static_cast<long>(k) * block_cols_,
                block_rows_, block_cols_) += diag_[k];
  for (const auto& e : off_)
    out.block(static_cast<long>(e.rb) * block_rows_,
              static_cast<long>(e.cb) * block_cols_, block_rows_, block_cols_) += e.B;
  return out;
}

void BlockOperator::add_to_triplets(BlockSparseMatrix& out, int row_offset,
                                    int col_offset, double scale) const {
  auto emit = [&](int rb, int cb, const DenseMatrix& B) {
    for (int i = 0; i < block_rows_; ++i)
      for (int j = 0; j < block_cols_; ++j)
        out.add(row_offset + rb * block_rows_ + i, col_offset + cb * block_cols_ + j,
                scale * B(i, j));
  };
  if (has_diag())
    for (int k = 0; k < row_blocks_; ++k) emit(k, k, diag_[k]);
  for (const auto& e : off_) emit(e.rb, e.cb, e.B);
}

}  // namespace hydrodg
