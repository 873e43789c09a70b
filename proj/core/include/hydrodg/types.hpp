#ifndef HYDRODG_TYPES_HPP
#define HYDRODG_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace hydrodg {

using Vec2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration or inconsistent input data.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Runtime numerical failure (solver breakdown, NaN state, drying mesh).
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

}  // namespace hydrodg

#endif
