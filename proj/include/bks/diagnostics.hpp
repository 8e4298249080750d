#pragma once

#include "bks/grassmann/factors.hpp"
#include "bks/grassmann/objective.hpp"
#include "bks/tensor/ttm.hpp"
#include "bks/tensor/unfold.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bks {

struct ModeSValues {
  std::size_t mode = 0;
  std::vector<double> values;  // s_1 >= ... >= s_r
  double next = 0.0;           // s_{r+1}
  double gap = 0.0;            // s_r - s_{r+1}
};

struct SValueReport {
  std::vector<ModeSValues> modes;
  const ModeSValues& mode(std::size_t m) const {
    for (const auto& x : modes)
      if (x.mode == m) return x;
    throw std::out_of_range("no S-values for mode " + std::to_string(m));
  }
};

struct SValueOptions {
  double tol = 1e-8;
  std::size_t max_iters = 10000;
};

// Largest singular value of r by power iteration on r^T r, stopped on the
// eigen-residual.
inline double largest_singular_value(const Eigen::MatrixXd& r, const SValueOptions& opt = {}) {
  if (r.size() == 0) return 0.0;
  const double scale = r.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> g;
  Eigen::VectorXd v(r.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
  v.normalize();
  double lambda = 0.0;
  for (std::size_t it = 0; it < opt.max_iters; ++it) {
    const Eigen::VectorXd w = r.transpose() * (r * v);
    lambda = v.dot(w);
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    if ((w - lambda * v).norm() <= opt.tol * std::abs(lambda)) break;
    v = w / wn;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

// S-values per mode: singular values of unfold_k(F) and the largest singular
// value of the part of A (contracted in the other two modes) outside range(U_k).
template <class Tensor>
SValueReport s_values(const Tensor& a, const Factors& f, const SValueOptions& opt = {}) {
  check_factors(a, f);
  const DenseTensor3 core = rayleigh_core(a, f);
  SValueReport out;
  for (std::size_t m = 0; m < 3; ++m) {
    if (f.symmetric && m == 1) continue;
    ModeSValues s;
    s.mode = m;
    const Eigen::Index r = f[m].cols();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(unfold(core, m));
    const Eigen::VectorXd sv = svd.singularValues();
    for (Eigen::Index i = 0; i < r; ++i) s.values.push_back(i < sv.size() ? sv(i) : 0.0);

    ModeFactors mf = f.right();
    mf[m] = ModeFactor{};
    const Eigen::MatrixXd c = unfold(ttm(a, mf), m);
    const Eigen::MatrixXd resid = c - f[m] * (f[m].transpose() * c);
    s.next = largest_singular_value(resid, opt);
    s.gap = s.values.back() - s.next;
    out.modes.push_back(std::move(s));
  }
  return out;
}

}  // namespace bks
