#ifndef HYDRODG_BASIS_HPP
#define HYDRODG_BASIS_HPP

#include <vector>

#include "hydrodg/types.hpp"

namespace hydrodg {

/// Orthonormal (shifted) Legendre basis on [0,1].
/// Indices are 1-based in the math; all public methods here take 0-based
/// indices i in [0, size).
class Basis1D {
 public:
  explicit Basis1D(int degree);

  int degree() const { return p_; }
  int size() const { return p_ + 1; }

  double eval(int i, double x) const;
  double grad(int i, double x) const;

 private:
  int p_;
};

/// Tensor-product basis on the reference square, phi_i = phi_m(x1)*phi_n(x2)
/// with the pairing i(m,n) = (max(m,n)-1)^2 + max(m,n) - m + n (1-based).
class Basis2D {
 public:
  explicit Basis2D(int degree);

  int degree() const { return p_; }
  int size() const { return static_cast<int>(pairs_.size()); }

  /// 1-based 1D indices (m, n) -> 1-based 2D index i.
  static int index_map(int m, int n);

  /// 0-based factor indices of 2D basis function i (0-based).
  std::pair<int, int> factors(int i) const { return pairs_[i]; }

  double eval(int i, const Vec2& xhat) const;
  Vec2 grad(int i, const Vec2& xhat) const;

  const Basis1D& basis1d() const { return b1_; }

 private:
  int p_;
  Basis1D b1_;
  std::vector<std::pair<int, int>> pairs_;  // 0-based (m,n) per i
};

}  // namespace hydrodg

#endif
