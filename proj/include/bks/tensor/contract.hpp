#pragma once

#include "bks/tensor/dense_tensor.hpp"
#include "bks/tensor/unfold.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>

namespace bks {

// <A, B>: sum of elementwise products.
inline double inner_product(const DenseTensor3& a, const DenseTensor3& b) {
  if (a.dims() != b.dims()) {
    throw std::invalid_argument("inner_product: dims " + dims_string(a.dims()) + " vs " +
                                dims_string(b.dims()));
  }
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) s += a.values()[t] * b.values()[t];
  return s;
}

// <A, B>_{-mode}: contraction over the two other modes. Entry (x, y) is the
// inner product of slice x of A with slice y of B (slices orthogonal to `mode`).
inline Eigen::MatrixXd contract_except(const DenseTensor3& a, const DenseTensor3& b,
                                       std::size_t mode) {
  check_mode(mode);
  const auto& da = a.dims();
  const auto& db = b.dims();
  for (std::size_t m = 0; m < 3; ++m) {
    if (m != mode && da[m] != db[m]) {
      throw std::invalid_argument("contract_except: contracted mode " + std::to_string(m) +
                                  " has dimension " + std::to_string(da[m]) + " vs " +
                                  std::to_string(db[m]));
    }
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(da[mode]),
                                              static_cast<Eigen::Index>(db[mode]));
  if (a.empty() || b.empty()) return out;
  switch (mode) {
    case 0:
      out.noalias() = a.as_matrix(da[0], da[1] * da[2]) * b.as_matrix(db[0], db[1] * db[2]).transpose();
      break;
    case 2:
      out.noalias() = a.as_matrix(da[0] * da[1], da[2]).transpose() * b.as_matrix(db[0] * db[1], db[2]);
      break;
    default:
      for (std::size_t k = 0; k < da[2]; ++k) out.noalias() += a.slice(k).transpose() * b.slice(k);
  }
  return out;
}

using ContractionResult = std::variant<double, Eigen::MatrixXd>;

// Contraction over the listed modes (0-based). Three modes give a scalar, two
// modes give the matrix <A,B>_{-k} of the remaining mode k. Single-mode
// contractions are order-4 and not supported.
inline ContractionResult contract(const DenseTensor3& a, const DenseTensor3& b,
                                  const std::set<std::size_t>& modes) {
  for (std::size_t m : modes) check_mode(m);
  if (modes.size() == 3) return inner_product(a, b);
  if (modes.size() == 2) {
    std::size_t keep = 0;
    while (modes.count(keep)) ++keep;
    return contract_except(a, b, keep);
  }
  throw std::invalid_argument("contract: only two- or three-mode contractions are supported");
}

}  // namespace bks
