#pragma once

#include "bks/tensor/sparse_tensor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bks {

struct SyntheticTensor {
  SparseTensor3 tensor;
  std::vector<std::uint32_t> perm12;  // original index -> permuted, modes 0 and 1
  std::vector<std::uint32_t> perm3;   // mode 2
  std::size_t r1 = 0, r3 = 0;

  // Orthonormal bases of the planted signal subspaces.
  Eigen::MatrixXd signal_u() const { return unit_columns(perm12, r1); }
  Eigen::MatrixXd signal_w() const { return unit_columns(perm3, r3); }

 private:
  static Eigen::MatrixXd unit_columns(const std::vector<std::uint32_t>& p, std::size_t r) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < r; ++i) q(p[i], static_cast<Eigen::Index>(i)) = 1.0;
    return q;
  }
};

// A = A_signal + rho * A_noise on an m x m x n grid. The signal is a standard
// normal r1 x r1 x r3 core in the leading corner, the noise is standard normal;
// both are made symmetric in modes 0 and 1. Modes 0 and 1 are then permuted
// together and mode 2 independently.
inline SyntheticTensor generate_synthetic(std::size_t m, std::size_t n, std::size_t r1, std::size_t r3,
                                          double rho, std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("generate_synthetic: dimensions must be positive");
  if (r1 == 0 || r3 == 0 || r1 > m || r3 > n) {
    throw std::invalid_argument("generate_synthetic: ranks (" + std::to_string(r1) + "," + std::to_string(r3) +
                                ") do not fit " + std::to_string(m) + "x" + std::to_string(m) + "x" +
                                std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  SyntheticTensor out;
  out.r1 = r1;
  out.r3 = r3;

  std::vector<double> dense(m * m * n, 0.0);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> double& { return dense[i + m * (j + m * k)]; };
  for (std::size_t k = 0; k < r3; ++k)
    for (std::size_t j = 0; j < r1; ++j)
      for (std::size_t i = 0; i <= j; ++i) {
        const double v = g(rng);
        at(i, j, k) = v;
        at(j, i, k) = v;
      }
  if (rho != 0.0) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i <= j; ++i) {
          const double a = g(rng);
          const double b = i == j ? a : g(rng);
          const double v = rho * 0.5 * (a + b);
          at(i, j, k) += v;
          if (i != j) at(j, i, k) += v;
        }
  }

  out.perm12.resize(m);
  out.perm3.resize(n);
  std::iota(out.perm12.begin(), out.perm12.end(), 0u);
  std::iota(out.perm3.begin(), out.perm3.end(), 0u);
  std::shuffle(out.perm12.begin(), out.perm12.end(), rng);
  std::shuffle(out.perm3.begin(), out.perm3.end(), rng);

  std::vector<Entry> entries;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) {
        const double v = at(i, j, k);
        if (v != 0.0) entries.push_back({{out.perm12[i], out.perm12[j], out.perm3[k]}, v});
      }
  out.tensor = SparseTensor3({m, m, n}, std::move(entries), true);
  return out;
}

}  // namespace bks
