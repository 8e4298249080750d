#pragma once

#include "bks/tensor/dense_tensor.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace bks {

// Unfolding convention (cyclic):
//   mode 0: column j + k * d1   (mode 1 fastest, then mode 2)
//   mode 1: column k + i * d2   (mode 2 fastest, then mode 0)
//   mode 2: column i + j * d0   (mode 0 fastest, then mode 1)
// With the storage order of DenseTensor3, unfold(t, 0) is the raw buffer and
// unfold(t, 2) is its transpose.

inline void check_mode(std::size_t mode) {
  if (mode > 2) throw std::invalid_argument("mode must be 0, 1 or 2, got " + std::to_string(mode));
}

inline Eigen::MatrixXd unfold(const DenseTensor3& t, std::size_t mode) {
  check_mode(mode);
  const auto& d = t.dims();
  switch (mode) {
    case 0:
      return t.as_matrix(d[0], d[1] * d[2]);
    case 2:
      return t.as_matrix(d[0] * d[1], d[2]).transpose();
    default: {
      Eigen::MatrixXd m(d[1], d[2] * d[0]);
      for (std::size_t i = 0; i < d[0]; ++i)
        for (std::size_t k = 0; k < d[2]; ++k)
          for (std::size_t j = 0; j < d[1]; ++j) m(j, k + i * d[2]) = t(i, j, k);
      return m;
    }
  }
}

inline DenseTensor3 fold(const Eigen::MatrixXd& m, std::size_t mode, const Dims3& dims) {
  check_mode(mode);
  const auto rows = static_cast<Eigen::Index>(dims[mode]);
  const auto cols = static_cast<Eigen::Index>(volume(dims) / (dims[mode] == 0 ? 1 : dims[mode]));
  if (m.rows() != rows || (rows != 0 && m.cols() != cols)) {
    throw std::invalid_argument("fold: matrix " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " does not match mode " +
                                std::to_string(mode) + " of dims " + dims_string(dims));
  }
  DenseTensor3 t(dims);
  switch (mode) {
    case 0:
      t.as_matrix(dims[0], dims[1] * dims[2]) = m;
      break;
    case 2:
      t.as_matrix(dims[0] * dims[1], dims[2]) = m.transpose();
      break;
    default:
      for (std::size_t i = 0; i < dims[0]; ++i)
        for (std::size_t k = 0; k < dims[2]; ++k)
          for (std::size_t j = 0; j < dims[1]; ++j) t(i, j, k) = m(j, k + i * dims[2]);
  }
  return t;
}

// Mode-2 unfolding restricted to the fibers t(i, j, :) with i <= j, ordered as in
// unfold(t, 2): j outer, i inner. Result is d2 x d0(d0+1)/2.
inline Eigen::MatrixXd triunfold3(const DenseTensor3& t) {
  const auto& d = t.dims();
  if (d[0] != d[1]) {
    throw std::invalid_argument("triunfold3: first two dims differ (" + dims_string(d) + ")");
  }
  const std::size_t p = d[0];
  Eigen::MatrixXd m(d[2], p * (p + 1) / 2);
  Eigen::Index col = 0;
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i <= j; ++i, ++col)
      for (std::size_t k = 0; k < d[2]; ++k) m(k, col) = t(i, j, k);
  return m;
}

// Inverse of triunfold3 for a (0,1)-symmetric tensor: fills both (i,j) and (j,i).
inline DenseTensor3 trifold3(const Eigen::MatrixXd& m, std::size_t p) {
  if (static_cast<std::size_t>(m.cols()) != p * (p + 1) / 2) {
    throw std::invalid_argument("trifold3: expected " + std::to_string(p * (p + 1) / 2) +
                                " columns");
  }
  DenseTensor3 t({p, p, static_cast<std::size_t>(m.rows())});
  Eigen::Index col = 0;
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i <= j; ++i, ++col)
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        t(i, j, k) = m(k, col);
        t(j, i, k) = m(k, col);
      }
  return t;
}

}  // namespace bks
