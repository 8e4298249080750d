#pragma once

#include "bks/linalg.hpp"
#include "bks/tensor/dense_tensor.hpp"
#include "bks/tensor/ttm.hpp"
#include "bks/tensor/unfold.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace bks {

struct BlockStepOptions {
  // Relative to the largest R diagonal of the step.
  double drop_tol = 1e-12;
  // Relative to the largest column of the data before projection; below this the
  // remainder is rounding noise.
  double noise_floor = 64.0 * std::numeric_limits<double>::epsilon();
  // Reorthogonalize the new block when max |existing^T Q| exceeds this. Weakly
  // determined columns carry errors far above eps, and at gradients near 1e-13
  // anything looser shows up in the solution, so the default always reorthogonalizes.
  double reorth_tol = 0.0;
};

namespace detail {

inline void positive_diagonal(Eigen::MatrixXd& q, const Eigen::VectorXd& diag) {
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    if (diag(j) < 0.0) q.col(j) *= -1.0;
}

}  // namespace detail

// Orthonormal basis for the part of range(data) orthogonal to `existing`, with
// numerically dependent directions dropped and at most max_new columns.
inline Eigen::MatrixXd extend_basis(const Eigen::MatrixXd& existing, const Eigen::MatrixXd& data,
                                    Eigen::Index max_new, const BlockStepOptions& opt = {}) {
  const Eigen::Index n = data.rows();
  if (data.cols() == 0 || max_new <= 0) return Eigen::MatrixXd(n, 0);
  const double scale = data.colwise().norm().maxCoeff();
  if (scale == 0.0) return Eigen::MatrixXd(n, 0);

  // Two projection passes: a single pass leaves components along `existing` of
  // relative size eps * ||data|| / ||r||, which matters when r is small.
  Eigen::MatrixXd r = data;
  if (existing.cols() > 0) {
    r.noalias() -= existing * (existing.transpose() * data);
    r -= existing * (existing.transpose() * r);
  }

  const Eigen::Index k = std::min(r.rows(), r.cols());
  const double floor = opt.noise_floor * scale;
  Eigen::MatrixXd q;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(r);
  const Eigen::VectorXd diag = qr.matrixQR().diagonal().head(k);
  const double dmax = diag.cwiseAbs().maxCoeff();
  if (dmax <= floor) return Eigen::MatrixXd(n, 0);
  const double cut = std::max(opt.drop_tol * dmax, floor);
  if ((diag.cwiseAbs().array() >= cut).all()) {
    q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    detail::positive_diagonal(q, diag);
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> piv(r);
    const Eigen::VectorXd pd = piv.matrixQR().diagonal().head(k);
    const double pmax = std::abs(pd(0));
    const double pcut = std::max(opt.drop_tol * pmax, floor);
    Eigen::Index rank = 0;
    while (rank < k && std::abs(pd(rank)) >= pcut) ++rank;
    q = piv.householderQ() * Eigen::MatrixXd::Identity(n, rank);
    detail::positive_diagonal(q, pd.head(rank));
  }
  if (q.cols() > max_new) q = q.leftCols(max_new).eval();

  if (existing.cols() > 0 && q.cols() > 0 &&
      (existing.transpose() * q).cwiseAbs().maxCoeff() > opt.reorth_tol) {
    q -= existing * (existing.transpose() * q);
    q = thin_qr(q).q;
  }
  return q;
}

struct BlockStepResult {
  Eigen::MatrixXd basis;     // new orthonormal columns
  DenseTensor3 h_prev;       // coordinates of the contracted tensor in `existing`
  DenseTensor3 h_new;        // coordinates in `basis`
  DenseTensor3 contracted;   // the contracted tensor itself
};

// One block-Krylov step in `mode`: contract A with `first` and `second` in the
// two other modes (in increasing mode order), remove the components along
// `existing` and orthonormalize the rest. With `triangular` (mode 2 only, first
// and second equal) only the fibers (i <= j) generate new columns.
//
// On return, unfold(contracted) = existing * unfold(h_prev) + basis * unfold(h_new)
// up to the dropped directions.
template <class Tensor>
BlockStepResult block_step(const Tensor& a, std::size_t mode, const Eigen::MatrixXd& first,
                           const Eigen::MatrixXd& second, const Eigen::MatrixXd& existing,
                           bool triangular = false, const BlockStepOptions& opt = {}) {
  check_mode(mode);
  const std::size_t o1 = mode == 0 ? 1 : 0;
  const std::size_t o2 = mode == 2 ? 1 : 2;
  const auto dim = static_cast<Eigen::Index>(a.dims()[mode]);
  if (existing.rows() != dim) {
    throw std::invalid_argument("block_step: existing basis has " + std::to_string(existing.rows()) +
                                " rows, mode " + std::to_string(mode) + " has dimension " +
                                std::to_string(dim));
  }
  if (triangular && (mode != 2 || first.cols() != second.cols())) {
    throw std::invalid_argument("block_step: triangular step needs mode 2 and equal blocks");
  }
  ModeFactors f{};
  f[o1] = ModeFactor::right(first);
  f[o2] = ModeFactor::right(second);

  BlockStepResult out;
  out.contracted = ttm(a, f);
  const Eigen::MatrixXd full = unfold(out.contracted, mode);
  const Eigen::MatrixXd gen = triangular ? triunfold3(out.contracted) : full;
  out.basis = extend_basis(existing, gen, dim - existing.cols(), opt);

  Dims3 hd = out.contracted.dims();
  hd[mode] = static_cast<std::size_t>(existing.cols());
  const Eigen::MatrixXd coords = existing.transpose() * full;
  out.h_prev = fold(coords, mode, hd);
  hd[mode] = static_cast<std::size_t>(out.basis.cols());
  // Taken from the projected data so that a tiny loss of orthogonality to
  // `existing` does not leak the large h_prev part into h_new.
  Eigen::MatrixXd rest = full - existing * coords;
  rest -= existing * (existing.transpose() * rest);
  out.h_new = fold(out.basis.transpose() * rest, mode, hd);
  return out;
}

}  // namespace bks
