#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bks {

using Dims3 = std::array<std::size_t, 3>;

inline std::size_t volume(const Dims3& d) { return d[0] * d[1] * d[2]; }

inline std::string dims_string(const Dims3& d) {
  return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" + std::to_string(d[2]);
}

// Small dense third-order tensor. Values are stored with mode 0 fastest:
// element (i, j, k) lives at i + d0 * (j + d1 * k). Modes are 0-based.
class DenseTensor3 {
 public:
  DenseTensor3() = default;

  explicit DenseTensor3(const Dims3& dims) : dims_(dims), values_(volume(dims), 0.0) {}

  DenseTensor3(const Dims3& dims, std::vector<double> values)
      : dims_(dims), values_(std::move(values)) {
    if (values_.size() != volume(dims_)) {
      throw std::invalid_argument("DenseTensor3: " + std::to_string(values_.size()) +
                                  " values for dims " + dims_string(dims_));
    }
  }

  const Dims3& dims() const { return dims_; }
  std::size_t dim(std::size_t mode) const { return dims_[mode]; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return values_[i + dims_[0] * (j + dims_[1] * k)];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[i + dims_[0] * (j + dims_[1] * k)];
  }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  const std::vector<double>& values() const { return values_; }

  // Column-major view of the whole buffer as rows x cols, rows * cols == size().
  Eigen::Map<Eigen::MatrixXd> as_matrix(std::size_t rows, std::size_t cols) {
    return {values_.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
  }
  Eigen::Map<const Eigen::MatrixXd> as_matrix(std::size_t rows, std::size_t cols) const {
    return {values_.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
  }

  // Mode-2 slice k as a d0 x d1 matrix.
  Eigen::Map<const Eigen::MatrixXd> slice(std::size_t k) const {
    return {values_.data() + k * dims_[0] * dims_[1], static_cast<Eigen::Index>(dims_[0]),
            static_cast<Eigen::Index>(dims_[1])};
  }
  Eigen::Map<Eigen::MatrixXd> slice(std::size_t k) {
    return {values_.data() + k * dims_[0] * dims_[1], static_cast<Eigen::Index>(dims_[0]),
            static_cast<Eigen::Index>(dims_[1])};
  }

  double squared_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(squared_norm()); }

  // Leading sub-tensor [0, d0) x [0, d1) x [0, d2).
  DenseTensor3 leading(const Dims3& d) const {
    for (std::size_t m = 0; m < 3; ++m) {
      if (d[m] > dims_[m]) throw std::invalid_argument("leading: sub-dims exceed tensor dims");
    }
    DenseTensor3 out(d);
    for (std::size_t k = 0; k < d[2]; ++k)
      for (std::size_t j = 0; j < d[1]; ++j)
        for (std::size_t i = 0; i < d[0]; ++i) out(i, j, k) = (*this)(i, j, k);
    return out;
  }

  friend bool operator==(const DenseTensor3& a, const DenseTensor3& b) {
    return a.dims_ == b.dims_ && a.values_ == b.values_;
  }

 private:
  Dims3 dims_{0, 0, 0};
  std::vector<double> values_;
};

inline DenseTensor3 operator-(const DenseTensor3& a, const DenseTensor3& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("tensor difference: dims differ");
  std::vector<double> v(a.size());
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = a.values()[t] - b.values()[t];
  return DenseTensor3(a.dims(), std::move(v));
}

inline DenseTensor3 operator+(const DenseTensor3& a, const DenseTensor3& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("tensor sum: dims differ");
  std::vector<double> v(a.size());
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = a.values()[t] + b.values()[t];
  return DenseTensor3(a.dims(), std::move(v));
}

inline DenseTensor3 operator*(double s, const DenseTensor3& a) {
  std::vector<double> v(a.values());
  for (double& x : v) x *= s;
  return DenseTensor3(a.dims(), std::move(v));
}

}  // namespace bks
