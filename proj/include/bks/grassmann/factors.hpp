#pragma once

#include "bks/linalg.hpp"
#include "bks/tensor/multilinear.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace bks {

using Ranks = std::array<std::size_t, 3>;

// Orthonormal factors (U, V, W). A symmetric set keeps V identical to U.
struct Factors {
  Eigen::MatrixXd u, v, w;
  bool symmetric = false;

  static Factors general(Eigen::MatrixXd u, Eigen::MatrixXd v, Eigen::MatrixXd w) {
    return {std::move(u), std::move(v), std::move(w), false};
  }
  static Factors sym(const Eigen::MatrixXd& u, Eigen::MatrixXd w) { return {u, u, std::move(w), true}; }

  const Eigen::MatrixXd& operator[](std::size_t m) const { return m == 0 ? u : (m == 1 ? v : w); }
  Eigen::MatrixXd& operator[](std::size_t m) { return m == 0 ? u : (m == 1 ? v : w); }

  Ranks ranks() const {
    return {static_cast<std::size_t>(u.cols()), static_cast<std::size_t>(v.cols()),
            static_cast<std::size_t>(w.cols())};
  }
  Ranks dims() const {
    return {static_cast<std::size_t>(u.rows()), static_cast<std::size_t>(v.rows()),
            static_cast<std::size_t>(w.rows())};
  }
  ModeFactors right() const { return right_factors(u, v, w); }

  double orthonormality_error() const {
    return std::max({bks::orthonormality_error(u), bks::orthonormality_error(v), bks::orthonormality_error(w)});
  }
};

template <class Rng>
Factors random_factors(const Ranks& dims, const Ranks& ranks, bool symmetric, Rng& rng) {
  for (std::size_t m = 0; m < 3; ++m) {
    if (ranks[m] == 0 || ranks[m] > dims[m]) {
      throw std::invalid_argument("rank " + std::to_string(ranks[m]) + " invalid for mode " +
                                  std::to_string(m) + " of dimension " + std::to_string(dims[m]));
    }
  }
  const auto idx = [](std::size_t x) { return static_cast<Eigen::Index>(x); };
  if (symmetric) {
    const Eigen::MatrixXd u = random_orthonormal(idx(dims[0]), idx(ranks[0]), rng);
    return Factors::sym(u, random_orthonormal(idx(dims[2]), idx(ranks[2]), rng));
  }
  Eigen::MatrixXd u = random_orthonormal(idx(dims[0]), idx(ranks[0]), rng);
  Eigen::MatrixXd v = random_orthonormal(idx(dims[1]), idx(ranks[1]), rng);
  return Factors::general(std::move(u), std::move(v), random_orthonormal(idx(dims[2]), idx(ranks[2]), rng));
}

}  // namespace bks
