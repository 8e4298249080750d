#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bks {

// max |M^T M - I|
inline double orthonormality_error(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return 0.0;
  const Eigen::MatrixXd g = m.transpose() * m;
  return (g - Eigen::MatrixXd::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

struct ThinQr {
  Eigen::MatrixXd q;  // rows x min(rows, cols)
  Eigen::MatrixXd r;  // min(rows, cols) x cols, nonnegative diagonal
};

// Householder thin QR with the sign of each Q column chosen so diag(R) >= 0.
inline ThinQr thin_qr(const Eigen::MatrixXd& m) {
  const Eigen::Index k = std::min(m.rows(), m.cols());
  ThinQr out;
  if (k == 0) {
    out.q = Eigen::MatrixXd(m.rows(), 0);
    out.r = Eigen::MatrixXd(0, m.cols());
    return out;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  out.q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (out.r(j, j) < 0.0) {
      out.r.row(j) *= -1.0;
      out.q.col(j) *= -1.0;
    }
  }
  return out;
}

// Orthonormal basis of range(m) via thin QR (the QR retraction when m = X + t D).
inline Eigen::MatrixXd qf(const Eigen::MatrixXd& m) { return thin_qr(m).q; }

// Flips each column so its largest-magnitude component is positive.
inline void fix_column_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index best = 0;
    m.col(j).cwiseAbs().maxCoeff(&best);
    if (m(best, j) < 0.0) m.col(j) *= -1.0;
  }
}

struct LeadingSingular {
  Eigen::MatrixXd vectors;  // rows x r, sign-fixed
  Eigen::VectorXd values;   // all singular values, descending
};

// Leading r left singular vectors of m.
inline LeadingSingular leading_left_singular(const Eigen::MatrixXd& m, Eigen::Index r) {
  if (r > m.rows()) throw std::invalid_argument("leading_left_singular: r exceeds row count");
  LeadingSingular out;
  if (m.cols() == 0) {
    out.vectors = Eigen::MatrixXd::Identity(m.rows(), r);
    out.values = Eigen::VectorXd::Zero(0);
    return out;
  }
  Eigen::MatrixXd u;
  if (m.rows() <= m.cols() && m.cols() > 4 * m.rows()) {
    // Wide: an SVD of the R factor of m^T has the same left singular vectors.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m.transpose());
    const Eigen::MatrixXd rt = qr.matrixQR().topRows(m.rows()).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rt.transpose(), Eigen::ComputeThinU);
    u = svd.matrixU();
    out.values = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    u = svd.matrixU();
    out.values = svd.singularValues();
  }
  if (u.cols() < r) {
    // Fewer singular vectors than requested: pad with a complement.
    Eigen::MatrixXd full(m.rows(), r);
    full.leftCols(u.cols()) = u;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.rows());
    full.rightCols(r - u.cols()) = q.middleCols(u.cols(), r - u.cols());
    u = full;
  }
  out.vectors = u.leftCols(r);
  fix_column_signs(out.vectors);
  return out;
}

// Columns spanning the orthogonal complement of range(u); u orthonormal.
inline Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& u) {
  const Eigen::Index n = u.rows();
  if (u.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - u.cols());
}

// Largest principal angle between range(a) and range(b); both orthonormal with
// the same number of columns.
inline double subspace_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("subspace_angle: shapes differ");
  }
  if (a.cols() == 0) return 0.0;
  const Eigen::MatrixXd resid = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(resid);
  return std::asin(std::min(1.0, svd.singularValues()(0)));
}

template <class Rng>
Eigen::MatrixXd random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gauss(rng);
  return m;
}

template <class Rng>
Eigen::MatrixXd random_orthonormal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (cols > rows) throw std::invalid_argument("random_orthonormal: more columns than rows");
  return qf(random_gaussian(rows, cols, rng));
}

}  // namespace bks
