#pragma once

#include "bks/grassmann/factors.hpp"
#include "bks/linalg.hpp"
#include "bks/tensor/contract.hpp"
#include "bks/tensor/ttm.hpp"
#include "bks/tensor/unfold.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bks {

template <class Tensor>
void check_factors(const Tensor& c, const Factors& f) {
  for (std::size_t m = 0; m < 3; ++m) {
    if (static_cast<std::size_t>(f[m].rows()) != c.dims()[m]) {
      throw std::invalid_argument("mode " + std::to_string(m) + ": factor has " + std::to_string(f[m].rows()) +
                                  " rows, tensor dimension is " + std::to_string(c.dims()[m]));
    }
  }
}

// F = C.(U, V, W), the least-squares core for fixed factors.
template <class Tensor>
DenseTensor3 rayleigh_core(const Tensor& c, const Factors& f) {
  check_factors(c, f);
  return ttm(c, f.right());
}

// Phi(U, V, W) = ||C.(U, V, W)||^2.
template <class Tensor>
double phi(const Tensor& c, const Factors& f) {
  return rayleigh_core(c, f).squared_norm();
}

// Grassmann gradient of Phi / 2 in local coordinates, <F_perp^k, F>_{-k}.
struct GradientTriple {
  std::array<Eigen::MatrixXd, 3> g;
  double norm = 0.0;
};

template <class Tensor>
GradientTriple g_gradient_local(const Tensor& c, const Factors& f) {
  const DenseTensor3 core = rayleigh_core(c, f);
  GradientTriple out;
  double s = 0.0;
  for (std::size_t m = 0; m < 3; ++m) {
    const Eigen::MatrixXd perp = orthogonal_complement(f[m]);
    ModeFactors mf = f.right();
    mf[m] = ModeFactor::right(perp);
    out.g[m] = contract_except(ttm(c, mf), core, m);
    s += out.g[m].squaredNorm();
  }
  out.norm = std::sqrt(s);
  return out;
}

// The same gradient in global coordinates, (I - U U^T) Gamma_k with
// Gamma_k = <C contracted in the other two modes, F>_{-k}. Also returns F.
struct GlobalGradient {
  std::array<Eigen::MatrixXd, 3> g;
  double norm = 0.0;
  DenseTensor3 core;
};

template <class Tensor>
GlobalGradient g_gradient_global(const Tensor& c, const Factors& f) {
  check_factors(c, f);
  GlobalGradient out;
  double s = 0.0;
  for (std::size_t m = 0; m < 3; ++m) {
    if (f.symmetric && m == 1) {
      out.g[1] = out.g[0];
      s += out.g[1].squaredNorm();
      continue;
    }
    ModeFactors mf = f.right();
    mf[m] = ModeFactor{};
    const DenseTensor3 partial = ttm(c, mf);
    const Eigen::MatrixXd pu = unfold(partial, m);
    const Eigen::MatrixXd fu = f[m].transpose() * pu;  // unfold_m(F)
    if (out.core.empty()) {
      Dims3 d = partial.dims();
      d[m] = static_cast<std::size_t>(f[m].cols());
      out.core = fold(fu, m, d);
    }
    const Eigen::MatrixXd gamma = pu * fu.transpose();
    out.g[m] = gamma - f[m] * (f[m].transpose() * gamma);
    s += out.g[m].squaredNorm();
  }
  out.norm = std::sqrt(s);
  return out;
}

inline double relative_gradient(double grad_norm, double core_norm) {
  return core_norm > 0.0 ? grad_norm / core_norm : (grad_norm > 0.0 ? INFINITY : 0.0);
}

}  // namespace bks
