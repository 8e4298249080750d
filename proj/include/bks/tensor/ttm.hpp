#pragma once

#include "bks/tensor/dense_tensor.hpp"
#include "bks/tensor/multilinear.hpp"
#include "bks/tensor/parallel.hpp"
#include "bks/tensor/sparse_tensor.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace bks {

namespace detail {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Factor as dim x r with contiguous rows, whatever side it was given on.
inline RowMatrix column_form(const ModeFactor& f) {
  if (f.transposed) return *f.matrix;
  return f.matrix->transpose();
}

inline std::array<std::size_t, 3> strides(const Dims3& d) { return {1, d[0], d[0] * d[1]}; }

// One mode kept, the other two contracted with x1 (mode c1) and x2 (mode c2).
inline DenseTensor3 kernel_keep_one(const SparseTensor3& a, std::size_t keep, std::size_t c1,
                                    const RowMatrix& x1, std::size_t c2, const RowMatrix& x2) {
  Dims3 od{};
  od[keep] = a.dim(keep);
  od[c1] = static_cast<std::size_t>(x1.cols());
  od[c2] = static_cast<std::size_t>(x2.cols());
  DenseTensor3 out(od);
  if (out.empty()) return out;
  const auto s = strides(od);
  const auto r1 = static_cast<std::size_t>(x1.cols());
  const auto r2 = static_cast<std::size_t>(x2.cols());
  const auto& order = a.mode_order(keep);
  const auto& idx = a.indices();
  const auto& val = a.values();
  double* o = out.data();
  for_each_key_range(
      order.size(), [&](std::size_t t) { return idx[order[t]][keep]; },
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
          const auto e = order[t];
          const auto& ix = idx[e];
          const double* p1 = x1.data() + ix[c1] * r1;
          const double* p2 = x2.data() + ix[c2] * r2;
          double* base = o + ix[keep] * s[keep];
          for (std::size_t b = 0; b < r2; ++b) {
            const double vb = val[e] * p2[b];
            double* col = base + b * s[c2];
            for (std::size_t al = 0; al < r1; ++al) col[al * s[c1]] += vb * p1[al];
          }
        }
      });
  return out;
}

// One mode contracted with x, the other two kept.
inline DenseTensor3 kernel_contract_one(const SparseTensor3& a, std::size_t c, const RowMatrix& x) {
  Dims3 od = a.dims();
  od[c] = static_cast<std::size_t>(x.cols());
  DenseTensor3 out(od);
  if (out.empty()) return out;
  const std::size_t outer = (c == 0) ? 1 : 0;
  const auto s = strides(od);
  const auto r = static_cast<std::size_t>(x.cols());
  const auto& order = a.mode_order(outer);
  const auto& idx = a.indices();
  const auto& val = a.values();
  double* o = out.data();
  for_each_key_range(
      order.size(), [&](std::size_t t) { return idx[order[t]][outer]; },
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
          const auto e = order[t];
          const auto& ix = idx[e];
          std::size_t off = 0;
          for (std::size_t m = 0; m < 3; ++m)
            if (m != c) off += ix[m] * s[m];
          const double* p = x.data() + ix[c] * r;
          for (std::size_t al = 0; al < r; ++al) o[off + al * s[c]] += val[e] * p[al];
        }
      });
  return out;
}

}  // namespace detail

// Multilinear product of a sparse tensor with per-mode factors; absent modes act
// as the identity. The result is dense. For a fixed output element, entries are
// accumulated in sorted (i, j, k) order, so the result does not depend on the
// number of worker threads.
inline DenseTensor3 ttm(const SparseTensor3& a, const ModeFactors& f) {
  check_conformal(a.dims(), f);
  std::array<detail::RowMatrix, 3> x;
  std::size_t contracted = 0;
  for (std::size_t m = 0; m < 3; ++m) {
    if (f[m].present()) {
      x[m] = detail::column_form(f[m]);
      ++contracted;
    }
  }
  switch (contracted) {
    case 0:
      return a.to_dense();
    case 1: {
      std::size_t c = 0;
      while (!f[c].present()) ++c;
      return detail::kernel_contract_one(a, c, x[c]);
    }
    case 2: {
      std::size_t keep = 0;
      while (f[keep].present()) ++keep;
      const std::size_t c1 = keep == 0 ? 1 : 0;
      const std::size_t c2 = keep == 2 ? 1 : 2;
      return detail::kernel_keep_one(a, keep, c1, x[c1], c2, x[c2]);
    }
    default: {
      // Finish the widest mode with a dense product; the sparse pass costs
      // nnz times the product of the other two widths.
      std::size_t last = 0;
      for (std::size_t m = 1; m < 3; ++m)
        if (x[m].cols() > x[last].cols()) last = m;
      const std::size_t c1 = last == 0 ? 1 : 0;
      const std::size_t c2 = last == 2 ? 1 : 2;
      const DenseTensor3 partial = detail::kernel_keep_one(a, last, c1, x[c1], c2, x[c2]);
      return mode_multiply(partial, f[last], last);
    }
  }
}

// A.(X, Y, Z): contraction with the columns of every factor.
inline DenseTensor3 ttm(const SparseTensor3& a, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                        const Eigen::MatrixXd& z) {
  return ttm(a, right_factors(x, y, z));
}

// Dense counterpart with the same calling convention.
inline DenseTensor3 ttm(const DenseTensor3& a, const ModeFactors& f) { return multilinear_multiply(a, f); }
inline DenseTensor3 ttm(const DenseTensor3& a, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                        const Eigen::MatrixXd& z) {
  return multilinear_multiply(a, right_factors(x, y, z));
}

}  // namespace bks
