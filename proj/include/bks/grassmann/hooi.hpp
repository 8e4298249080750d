#pragma once

#include "bks/grassmann/factors.hpp"
#include "bks/grassmann/objective.hpp"
#include "bks/grassmann/result.hpp"
#include "bks/linalg.hpp"
#include "bks/tensor/multilinear.hpp"
#include "bks/tensor/ttm.hpp"
#include "bks/tensor/unfold.hpp"

#include <cmath>
#include <stdexcept>

namespace bks {

struct HooiOptions {
  double tol = 1e-13;
  std::size_t max_iters = 1000;
  std::size_t grad_every = 10;
};

namespace detail {

inline bool small_gap(const LeadingSingular& s, Eigen::Index r) {
  if (s.values.size() <= r || s.values(0) == 0.0) return false;
  return s.values(r - 1) - s.values(r) < 1e-8 * s.values(0);
}

}  // namespace detail

// One alternating sweep; returns the core at the updated factors. The symmetric
// sweep updates U from C.(., U, W) with the previous U, then W from C.(U, U, .).
template <class Tensor>
DenseTensor3 hooi_sweep(const Tensor& c, Factors& f, bool* gap_flag = nullptr) {
  const auto r = f.ranks();
  bool gap = false;
  auto update = [&](std::size_t m) {
    ModeFactors mf = f.right();
    mf[m] = ModeFactor{};
    const DenseTensor3 partial = ttm(c, mf);
    const auto s = leading_left_singular(unfold(partial, m), static_cast<Eigen::Index>(r[m]));
    gap = gap || detail::small_gap(s, static_cast<Eigen::Index>(r[m]));
    f[m] = s.vectors;
    if (f.symmetric && m == 0) f.v = f.u;
    return partial;
  };
  if (f.symmetric) {
    update(0);
  } else {
    update(0);
    update(1);
  }
  const DenseTensor3 last = update(2);
  if (gap_flag) *gap_flag = gap;
  return mode_multiply(last, ModeFactor::right(f.w), 2);
}

// Higher order orthogonal iteration from `init`. The relative gradient is
// evaluated every grad_every sweeps and at termination.
template <class Tensor>
SolveResult hooi(const Tensor& c, const Factors& init, const HooiOptions& opt = {}) {
  check_factors(c, init);
  SolveResult out;
  out.factors = init;
  if (opt.max_iters == 0) {
    const auto g = g_gradient_global(c, out.factors);
    out.core = g.core;
    out.rel_grad = relative_gradient(g.norm, g.core.norm());
    out.status = out.rel_grad <= opt.tol ? SolveStatus::Converged : SolveStatus::MaxIterations;
    return out;
  }
  for (std::size_t it = 1; it <= opt.max_iters; ++it) {
    IterationRecord rec;
    rec.iter = it;
    out.core = hooi_sweep(c, out.factors, &rec.small_gap);
    rec.core_norm = out.core.norm();
    out.iterations = it;
    const bool last = it == opt.max_iters;
    if (last || (opt.grad_every > 0 && it % opt.grad_every == 0)) {
      const auto g = g_gradient_global(c, out.factors);
      rec.rel_grad = relative_gradient(g.norm, rec.core_norm);
      out.rel_grad = rec.rel_grad;
      out.history.push_back(rec);
      if (rec.rel_grad <= opt.tol) {
        out.status = SolveStatus::Converged;
        return out;
      }
      continue;
    }
    out.history.push_back(rec);
  }
  out.status = SolveStatus::MaxIterations;
  return out;
}

}  // namespace bks
