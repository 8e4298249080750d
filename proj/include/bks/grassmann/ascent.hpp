#pragma once

#include "bks/grassmann/factors.hpp"
#include "bks/grassmann/objective.hpp"
#include "bks/grassmann/result.hpp"
#include "bks/linalg.hpp"

#include <cmath>
#include <limits>

namespace bks {

struct AscentOptions {
  double tol = 1e-13;
  std::size_t max_iters = 500;
  double armijo = 1e-4;
  double shrink = 0.5;
  double min_step = 1e-16;  // smallest factor displacement tried
};

namespace detail {

// Ascent direction per mode; for symmetric factors U moves along the mean of the
// mode-0 and mode-1 components so that the slope equals the squared gradient norm.
inline std::array<Eigen::MatrixXd, 3> ascent_direction(const GlobalGradient& g, bool symmetric) {
  std::array<Eigen::MatrixXd, 3> d = g.g;
  if (symmetric) {
    d[0] = 0.5 * (g.g[0] + g.g[1]);
    d[1] = d[0];
  }
  return d;
}

inline double metric(const std::array<Eigen::MatrixXd, 3>& a, const std::array<Eigen::MatrixXd, 3>& b) {
  double s = 0.0;
  for (std::size_t m = 0; m < 3; ++m) s += (a[m].array() * b[m].array()).sum();
  return s;
}

inline Factors retract(const Factors& f, const std::array<Eigen::MatrixXd, 3>& d, double t) {
  Factors out = f;
  for (std::size_t m = 0; m < 3; ++m) {
    if (f.symmetric && m == 1) continue;
    if (d[m].size() == 0) continue;
    out[m] = qf(f[m] + t * d[m]);
  }
  if (out.symmetric) out.v = out.u;
  return out;
}

}  // namespace detail

// Riemannian gradient ascent on Phi with a QR retraction, Barzilai-Borwein trial
// steps and backtracking. A step is accepted when it satisfies the Armijo
// condition, or when Phi is unchanged to rounding and the gradient shrinks.
template <class Tensor>
SolveResult grassmann_ascent(const Tensor& c, const Factors& init, const AscentOptions& opt = {}) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  SolveResult out;
  out.factors = init;
  GlobalGradient g = g_gradient_global(c, out.factors);
  double value = g.core.squared_norm();
  double t = value > 0.0 ? 1.0 / value : 1.0;
  std::array<Eigen::MatrixXd, 3> prev_d;
  double prev_t = 0.0;

  for (std::size_t it = 0;; ++it) {
    const double core_norm = std::sqrt(value);
    out.rel_grad = relative_gradient(g.norm, core_norm);
    out.history.push_back({it, core_norm, out.rel_grad, false});
    out.core = g.core;
    out.iterations = it;
    if (out.rel_grad <= opt.tol) {
      out.status = SolveStatus::Converged;
      return out;
    }
    if (it == opt.max_iters) {
      out.status = SolveStatus::MaxIterations;
      return out;
    }
    const auto d = detail::ascent_direction(g, out.factors.symmetric);
    if (it > 0) {
      // s = prev_t * prev_d, y = d - prev_d; curvature along s is -<s, y>.
      std::array<Eigen::MatrixXd, 3> y;
      for (std::size_t m = 0; m < 3; ++m) y[m] = d[m] - prev_d[m];
      const double ss = prev_t * prev_t * detail::metric(prev_d, prev_d);
      const double sy = -prev_t * detail::metric(prev_d, y);
      t = sy > 0.0 ? ss / sy : 2.0 * prev_t;
    }
    const double slope = g.norm * g.norm;
    double dmax = 0.0;
    for (const auto& x : d)
      if (x.size() > 0) dmax = std::max(dmax, x.cwiseAbs().maxCoeff());

    bool accepted = false;
    while (t * dmax >= opt.min_step) {
      Factors trial = detail::retract(out.factors, d, t);
      GlobalGradient tg = g_gradient_global(c, trial);
      const double tv = tg.core.squared_norm();
      const bool armijo = 0.5 * tv >= 0.5 * value + opt.armijo * t * slope;
      const bool flat = std::abs(tv - value) <= 16.0 * eps * value && tg.norm < g.norm;
      if (armijo || flat) {
        out.factors = std::move(trial);
        g = std::move(tg);
        value = tv;
        accepted = true;
        break;
      }
      t *= opt.shrink;
    }
    if (!accepted) {
      out.status = SolveStatus::LineSearchFailed;
      return out;
    }
    prev_d = d;
    prev_t = t;
  }
}

}  // namespace bks
