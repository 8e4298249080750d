#pragma once

#include "bks/tensor/dense_tensor.hpp"
#include "bks/tensor/unfold.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace bks {

// A matrix applied in one mode of a multilinear product.
//   right(X): contract the mode with the columns of X (dim x r), written A.(X).
//   left(U):  multiply the mode fibers by U (r x dim), written (U).A.
// A default-constructed factor leaves its mode untouched.
struct ModeFactor {
  const Eigen::MatrixXd* matrix = nullptr;
  bool transposed = true;

  static ModeFactor right(const Eigen::MatrixXd& x) { return {&x, true}; }
  static ModeFactor left(const Eigen::MatrixXd& u) { return {&u, false}; }

  bool present() const { return matrix != nullptr; }
  // Length of the input mode this factor expects.
  Eigen::Index input_dim() const { return transposed ? matrix->rows() : matrix->cols(); }
  Eigen::Index output_dim() const { return transposed ? matrix->cols() : matrix->rows(); }
};

using ModeFactors = std::array<ModeFactor, 3>;

inline ModeFactors right_factors(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                 const Eigen::MatrixXd& z) {
  return {ModeFactor::right(x), ModeFactor::right(y), ModeFactor::right(z)};
}

inline ModeFactors left_factors(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                                const Eigen::MatrixXd& w) {
  return {ModeFactor::left(u), ModeFactor::left(v), ModeFactor::left(w)};
}

inline void check_conformal(const Dims3& dims, const ModeFactors& f) {
  for (std::size_t m = 0; m < 3; ++m) {
    if (f[m].present() && static_cast<std::size_t>(f[m].input_dim()) != dims[m]) {
      throw std::invalid_argument("mode " + std::to_string(m) + ": factor expects dimension " +
                                  std::to_string(f[m].input_dim()) + " but tensor has " +
                                  std::to_string(dims[m]));
    }
  }
}

// Single mode product; op is applied to every fiber of the given mode.
inline DenseTensor3 mode_multiply(const DenseTensor3& t, const ModeFactor& f, std::size_t mode) {
  check_mode(mode);
  if (!f.present()) return t;
  const auto& d = t.dims();
  if (static_cast<std::size_t>(f.input_dim()) != d[mode]) {
    throw std::invalid_argument("mode " + std::to_string(mode) + ": factor expects dimension " +
                                std::to_string(f.input_dim()) + " but tensor has " +
                                std::to_string(d[mode]));
  }
  const auto& m = *f.matrix;
  Dims3 out_dims = d;
  out_dims[mode] = static_cast<std::size_t>(f.output_dim());
  DenseTensor3 out(out_dims);
  if (out.empty() || t.empty()) return out;

  switch (mode) {
    case 0: {
      auto src = t.as_matrix(d[0], d[1] * d[2]);
      auto dst = out.as_matrix(out_dims[0], d[1] * d[2]);
      if (f.transposed) dst.noalias() = m.transpose() * src;
      else dst.noalias() = m * src;
      break;
    }
    case 2: {
      auto src = t.as_matrix(d[0] * d[1], d[2]);
      auto dst = out.as_matrix(d[0] * d[1], out_dims[2]);
      if (f.transposed) dst.noalias() = src * m;
      else dst.noalias() = src * m.transpose();
      break;
    }
    default:
      for (std::size_t k = 0; k < d[2]; ++k) {
        auto dst = out.slice(k);
        if (f.transposed) dst.noalias() = t.slice(k) * m;
        else dst.noalias() = t.slice(k) * m.transpose();
      }
  }
  return out;
}

// Product in all supplied modes; absent modes act as the identity.
inline DenseTensor3 multilinear_multiply(const DenseTensor3& t, const ModeFactors& f) {
  check_conformal(t.dims(), f);
  // Shrinking modes first keeps intermediates small.
  std::array<std::size_t, 3> order{0, 1, 2};
  auto shrink = [&](std::size_t m) {
    if (!f[m].present()) return 0.0;
    return static_cast<double>(f[m].output_dim()) / static_cast<double>(f[m].input_dim());
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return shrink(a) < shrink(b) || (shrink(a) == shrink(b) && a < b); });
  DenseTensor3 out = t;
  for (std::size_t m : order) {
    if (f[m].present()) out = mode_multiply(out, f[m], m);
  }
  return out;
}

}  // namespace bks
