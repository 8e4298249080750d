#pragma once

#include "bks/grassmann/ascent.hpp"
#include "bks/grassmann/hooi.hpp"
#include "bks/grassmann/hosvd.hpp"
#include "bks/grassmann/result.hpp"

namespace bks {

struct InnerOptions {
  double tol = 1e-13;
  std::size_t hooi_sweeps = 5;
  std::size_t max_iters = 500;
};

// Best rank-r approximation of a small dense tensor: truncated HOSVD, a few
// HOOI sweeps, then gradient ascent to the tolerance.
inline SolveResult solve_projected(const DenseTensor3& c, const Ranks& ranks, bool symmetric,
                                   const InnerOptions& opt = {}) {
  Factors f = hosvd_truncated(c, ranks, symmetric);
  for (std::size_t s = 0; s < opt.hooi_sweeps; ++s) hooi_sweep(c, f);
  AscentOptions ao;
  ao.tol = opt.tol;
  ao.max_iters = opt.max_iters;
  return grassmann_ascent(c, f, ao);
}

// Gradient ascent from a given point (warm start).
inline SolveResult solve_projected_from(const DenseTensor3& c, const Factors& init, const InnerOptions& opt = {}) {
  AscentOptions ao;
  ao.tol = opt.tol;
  ao.max_iters = opt.max_iters;
  return grassmann_ascent(c, init, ao);
}

}  // namespace bks
