#pragma once

// Brute-force reference computations used only by the tests.

#include "bks/tensor/dense_tensor.hpp"
#include "bks/tensor/sparse_tensor.hpp"
#include "bks/tensor/symmetry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace bks::oracle {

// b(a,b,c) = sum_{i,j,k} x(i,a) y(j,b) z(k,c) t(i,j,k), all factors dim x r.
inline DenseTensor3 triple_sum(const DenseTensor3& t, const Eigen::MatrixXd& x,
                               const Eigen::MatrixXd& y, const Eigen::MatrixXd& z) {
  const auto& d = t.dims();
  DenseTensor3 out({static_cast<std::size_t>(x.cols()), static_cast<std::size_t>(y.cols()),
                    static_cast<std::size_t>(z.cols())});
  for (Eigen::Index a = 0; a < x.cols(); ++a)
    for (Eigen::Index b = 0; b < y.cols(); ++b)
      for (Eigen::Index c = 0; c < z.cols(); ++c) {
        long double s = 0.0L;
        for (std::size_t i = 0; i < d[0]; ++i)
          for (std::size_t j = 0; j < d[1]; ++j)
            for (std::size_t k = 0; k < d[2]; ++k)
              s += static_cast<long double>(x(i, a)) * y(j, b) * z(k, c) * t(i, j, k);
        out(a, b, c) = static_cast<double>(s);
      }
  return out;
}

// d(x, y) = sum over the two modes other than `mode` of a(..x..) b(..y..).
inline Eigen::MatrixXd partial_contraction(const DenseTensor3& a, const DenseTensor3& b,
                                           std::size_t mode) {
  const auto& da = a.dims();
  const auto& db = b.dims();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(da[mode], db[mode]);
  for (std::size_t x = 0; x < da[mode]; ++x)
    for (std::size_t y = 0; y < db[mode]; ++y) {
      long double s = 0.0L;
      for (std::size_t i = 0; i < (mode == 0 ? 1 : da[0]); ++i)
        for (std::size_t j = 0; j < (mode == 1 ? 1 : da[1]); ++j)
          for (std::size_t k = 0; k < (mode == 2 ? 1 : da[2]); ++k) {
            const std::size_t ia = mode == 0 ? x : i, ja = mode == 1 ? x : j, ka = mode == 2 ? x : k;
            const std::size_t ib = mode == 0 ? y : i, jb = mode == 1 ? y : j, kb = mode == 2 ? y : k;
            s += static_cast<long double>(a(ia, ja, ka)) * b(ib, jb, kb);
          }
      out(x, y) = static_cast<double>(s);
    }
  return out;
}

inline double relative_error(const DenseTensor3& a, const DenseTensor3& ref) {
  const double nr = ref.norm();
  return (a - ref).norm() / (nr > 0 ? nr : 1.0);
}

template <class Rng>
DenseTensor3 random_dense(const Dims3& d, Rng& rng) {
  std::normal_distribution<double> g;
  DenseTensor3 t(d);
  for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] = g(rng);
  return t;
}

template <class Rng>
DenseTensor3 random_sym12(std::size_t m, std::size_t n, Rng& rng) {
  DenseTensor3 t = random_dense({m, m, n}, rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < j; ++i) t(j, i, k) = t(i, j, k);
  return t;
}

template <class Rng>
SparseTensor3 random_sparse(const Dims3& d, std::size_t nnz, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> di(0, d[0] - 1), dj(0, d[1] - 1), dk(0, d[2] - 1);
  std::normal_distribution<double> g;
  std::vector<Entry> e;
  for (std::size_t t = 0; t < nnz; ++t) e.push_back({{di(rng), dj(rng), dk(rng)}, g(rng)});
  return SparseTensor3(d, std::move(e));
}

template <class Rng>
SparseTensor3 random_sparse_sym12(std::size_t m, std::size_t n, std::size_t nnz, Rng& rng) {
  return symmetrize12(random_sparse({m, m, n}, nnz, rng));
}

// C = (Q1, Q2, Q3).G with a random core G and random orthonormal Qk; with
// `symmetric`, Q2 = Q1 and G is symmetric in its first two modes.
template <class Rng>
Eigen::MatrixXd qf_random(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

struct Planted {
  DenseTensor3 tensor;
  Eigen::MatrixXd q1, q2, q3;
};

template <class Rng>
Planted planted(const Dims3& d, const Dims3& r, bool symmetric, Rng& rng) {
  Planted out;
  DenseTensor3 g = symmetric ? random_sym12(r[0], r[2], rng) : random_dense(r, rng);
  out.q1 = qf_random(d[0], r[0], rng);
  out.q2 = symmetric ? out.q1 : qf_random(d[1], r[1], rng);
  out.q3 = qf_random(d[2], r[2], rng);
  out.tensor = triple_sum(g, out.q1.transpose(), out.q2.transpose(), out.q3.transpose());
  if (symmetric) {
    // Rounding breaks exact symmetry; average the two halves.
    auto& t = out.tensor;
    for (std::size_t k = 0; k < d[2]; ++k)
      for (std::size_t j = 0; j < d[1]; ++j)
        for (std::size_t i = 0; i < j; ++i) t(i, j, k) = t(j, i, k) = 0.5 * (t(i, j, k) + t(j, i, k));
  }
  return out;
}

}  // namespace bks::oracle
