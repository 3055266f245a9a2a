// torickgk — shared aliases, error type, and small dense-tensor containers.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace torickgk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using MatI = Eigen::MatrixXi;

/// How an error should be classified by callers (the CLI maps categories to
/// exit codes: config → 2, numerical → 3; verdict failures are not exceptions).
enum class ErrorCategory { config, numerical };

/// Single exception type for the whole library. `kind()` is a stable
/// machine-readable tag (e.g. "NotDelzant", "DivByZero"); the message carries
/// the human-readable witness (point, index, determinant, ...).
class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message),
        category_(category),
        kind_(std::move(kind)) {}

  ErrorCategory category() const { return category_; }
  const std::string& kind() const { return kind_; }

private:
  ErrorCategory category_;
  std::string kind_;
};

[[noreturn]] inline void throw_config(const std::string& kind, const std::string& msg) {
  throw Error(ErrorCategory::config, kind, msg);
}
[[noreturn]] inline void throw_numerical(const std::string& kind, const std::string& msg) {
  throw Error(ErrorCategory::numerical, kind, msg);
}

/// Dense order-3 tensor with all three indices in [0, m). Stored fully
/// (no symmetry compression); writers are responsible for symmetrizing.
class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(int m) : m_(m), a_(static_cast<size_t>(m) * m * m, 0.0) {}

  int dim() const { return m_; }
  double& operator()(int i, int j, int k) { return a_[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return a_[idx(i, j, k)]; }

  double max_abs() const {
    double v = 0;
    for (double x : a_) v = std::max(v, std::abs(x));
    return v;
  }

private:
  size_t idx(int i, int j, int k) const {
    return (static_cast<size_t>(i) * m_ + j) * m_ + k;
  }
  int m_ = 0;
  std::vector<double> a_;
};

/// Dense order-4 tensor, same conventions as Tensor3.
class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(int m) : m_(m), a_(static_cast<size_t>(m) * m * m * m, 0.0) {}

  int dim() const { return m_; }
  double& operator()(int i, int j, int k, int l) { return a_[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return a_[idx(i, j, k, l)]; }

  double max_abs() const {
    double v = 0;
    for (double x : a_) v = std::max(v, std::abs(x));
    return v;
  }

private:
  size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<size_t>(i) * m_ + j) * m_ + k) * m_ + l;
  }
  int m_ = 0;
  std::vector<double> a_;
};

/// Format a double with 17 significant digits (round-trip exact for IEEE
/// binary64). Used for all user-facing numeric output so runs are
/// byte-reproducible.
std::string format_double(double v);

}  // namespace torickgk
