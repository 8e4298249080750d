#pragma once

#include "bks/grassmann.hpp"
#include "bks/krylov.hpp"
#include "bks/tensor.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bks {

struct BKSConfig {
  Ranks ranks{2, 2, 2};
  ExpansionPlan plan;
  double tol = 1e-13;
  std::size_t max_outer = 100;
  std::uint64_t seed = 0;
  // Defaults to the outer tolerance.
  std::optional<double> inner_tol;
  std::size_t inner_max_iters = 500;
  std::size_t hooi_sweeps = 5;
  std::size_t stall_window = 5;
  // HOOI only.
  std::size_t grad_every = 10;
};

struct ConvergenceRecord {
  std::size_t iter = 0;
  double rel_grad = NAN;  // NaN when not evaluated
  double core_norm = 0.0;
  double elapsed_s = 0.0;  // since the start of the solve
  std::array<std::size_t, 3> k{0, 0, 0};
};

struct BKSResult {
  Factors factors;
  DenseTensor3 core;
  std::vector<ConvergenceRecord> history;
  SolveStatus status = SolveStatus::MaxIterations;
  double rel_grad = NAN;
  std::array<std::size_t, 3> k{0, 0, 0};  // largest bases used
  std::vector<std::string> notes;
};

namespace detail {

inline void check_ranks(const Dims3& dims, const Ranks& r, bool symmetric) {
  for (std::size_t m = 0; m < 3; ++m) {
    if (r[m] == 0 || r[m] > dims[m]) {
      throw std::invalid_argument("rank " + std::to_string(r[m]) + " invalid for mode " + std::to_string(m) +
                                  " of dimension " + std::to_string(dims[m]));
    }
  }
  if (symmetric && r[0] != r[1]) throw std::invalid_argument("symmetric solve needs r1 = r2");
}

template <class Tensor>
bool symmetric_input(const Tensor& a) {
  if constexpr (std::is_same_v<Tensor, SparseTensor3>) return a.sym12();
  else return check_sym12(a);
}

template <class Tensor>
Expansion<Tensor> make_expansion(const Tensor& a, const ExpansionPlan& plan, const Factors& f) {
  if (f.symmetric) return Expansion<Tensor>(a, plan, f.u, f.w);
  return Expansion<Tensor>(a, plan, f.u, f.v, f.w);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// No core growth above 1e-15 ||A|| and no new smallest gradient for `window`
// consecutive checks.
class StallMonitor {
 public:
  StallMonitor(double scale, std::size_t window) : scale_(scale), window_(window) {}
  bool update(double core_norm, double rel_grad) {
    bool progress = false;
    if (core_norm > best_norm_ + 1e-15 * scale_) {
      best_norm_ = core_norm;
      progress = true;
    }
    if (rel_grad < best_grad_) {
      best_grad_ = rel_grad;
      progress = true;
    }
    count_ = progress ? 0 : count_ + 1;
    return window_ > 0 && count_ >= window_;
  }

 private:
  double scale_;
  std::size_t window_;
  double best_norm_ = -1.0;
  double best_grad_ = INFINITY;
  std::size_t count_ = 0;
};

}  // namespace detail

// Gradient norm at f0 from one block-Krylov step per mode.
template <class Tensor>
double gradient_via_krylov(const Tensor& a, const Factors& f0) {
  auto e = detail::make_expansion(a, ExpansionPlan{Variant::MinBK, 1, 1}, f0);
  e.next_stage();
  return e.gradient_norm();
}

// Restarted block-Krylov solver for the best rank-(r1, r2, r3) approximation.
// The symmetric path is taken for a symmetric tensor and keeps V = U.
template <class Tensor>
BKSResult bks_solve(const Tensor& a, const BKSConfig& cfg, std::optional<Factors> init = std::nullopt) {
  const bool sym = detail::symmetric_input(a);
  detail::check_ranks(a.dims(), cfg.ranks, sym);
  BKSResult out;
  Factors f;
  if (init) {
    f = *init;
    check_factors(a, f);
    if (f.ranks() != cfg.ranks) throw std::invalid_argument("bks_solve: initial factors do not match ranks");
    if (sym && !f.symmetric) f = Factors::sym(f.u, f.w);
    if (!sym && f.symmetric) f.symmetric = false;
  } else {
    std::mt19937_64 rng(cfg.seed);
    f = random_factors(a.dims(), cfg.ranks, sym, rng);
  }

  const auto nominal = nominal_counts(cfg.plan, cfg.ranks, sym).back();
  const Ranks& r = cfg.ranks;
  const std::array<std::size_t, 3> need{r[1] * r[2], r[0] * r[2], r[0] * r[1]};
  for (std::size_t m = 0; m < 3; ++m) {
    if (nominal[m] < need[m]) {
      out.notes.push_back("mode " + std::to_string(m) + ": planned basis size " + std::to_string(nominal[m]) +
                          " is below " + std::to_string(need[m]));
    }
    if (nominal[m] > a.dims()[m]) {
      out.notes.push_back("mode " + std::to_string(m) + ": planned basis size " + std::to_string(nominal[m]) +
                          " exceeds dimension " + std::to_string(a.dims()[m]) + ", expansion saturates");
    }
  }

  InnerOptions inner;
  inner.tol = cfg.inner_tol.value_or(cfg.tol);
  inner.max_iters = cfg.inner_max_iters;
  inner.hooi_sweeps = cfg.hooi_sweeps;

  detail::Stopwatch clock;
  detail::StallMonitor stall(a.norm(), cfg.stall_window);
  std::array<bool, 3> saturation_noted{false, false, false};

  for (std::size_t outer = 0;; ++outer) {
    auto e = detail::make_expansion(a, cfg.plan, f);
    e.next_stage();
    const double gnorm = e.gradient_norm();
    out.core = e.gradient_blocks().h0;
    const double fnorm = out.core.norm();
    out.rel_grad = relative_gradient(gnorm, fnorm);
    out.factors = f;

    ConvergenceRecord rec;
    rec.iter = outer;
    rec.rel_grad = out.rel_grad;
    rec.core_norm = fnorm;
    if (out.rel_grad <= cfg.tol) {
      out.status = SolveStatus::Converged;
    } else if (outer >= cfg.max_outer) {
      out.status = SolveStatus::MaxIterations;
    } else if (stall.update(fnorm, out.rel_grad)) {
      out.status = SolveStatus::Stalled;
    } else {
      e.run();
      for (std::size_t m = 0; m < 3; ++m) {
        rec.k[m] = static_cast<std::size_t>(e.columns(m));
        out.k[m] = std::max(out.k[m], rec.k[m]);
        if (e.saturated(m) && !saturation_noted[m]) {
          saturation_noted[m] = true;
          out.notes.push_back("mode " + std::to_string(m) + " saturated at " + std::to_string(rec.k[m]) +
                              " columns in outer iteration " + std::to_string(outer));
        }
      }
      const Eigen::MatrixXd& x = e.basis(0).matrix();
      const Eigen::MatrixXd& y = e.basis(1).matrix();
      const Eigen::MatrixXd& z = e.basis(2).matrix();
      const DenseTensor3 c = ttm(a, x, y, z);

      SolveResult best = solve_projected(c, cfg.ranks, sym, inner);
      // The previous point sits at the leading columns of the bases; never end
      // below it.
      const double previous = fnorm;
      if (best.core.norm() < previous) {
        Factors e0;
        e0.symmetric = sym;
        for (std::size_t m = 0; m < 3; ++m) {
          e0[m] = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(c.dim(m)),
                                            static_cast<Eigen::Index>(cfg.ranks[m]));
        }
        SolveResult warm = solve_projected_from(c, e0, inner);
        if (warm.core.norm() > best.core.norm()) best = std::move(warm);
      }
      f.u = x * best.factors.u;
      f.w = z * best.factors.w;
      f.v = sym ? f.u : Eigen::MatrixXd(y * best.factors.v);
      rec.elapsed_s = clock.seconds();
      out.history.push_back(rec);
      continue;
    }
    rec.elapsed_s = clock.seconds();
    out.history.push_back(rec);
    break;
  }
  return out;
}

// Baseline HOOI on the full tensor. The gradient is evaluated every
// cfg.grad_every sweeps and at termination.
template <class Tensor>
BKSResult hooi_full(const Tensor& a, const BKSConfig& cfg, std::optional<Factors> init = std::nullopt) {
  const bool sym = detail::symmetric_input(a);
  detail::check_ranks(a.dims(), cfg.ranks, sym);
  Factors f;
  if (init) {
    f = *init;
    check_factors(a, f);
    if (sym && !f.symmetric) f = Factors::sym(f.u, f.w);
  } else {
    std::mt19937_64 rng(cfg.seed);
    f = random_factors(a.dims(), cfg.ranks, sym, rng);
  }
  BKSResult out;
  detail::Stopwatch clock;
  out.status = SolveStatus::MaxIterations;
  for (std::size_t it = 1; it <= cfg.max_outer; ++it) {
    ConvergenceRecord rec;
    rec.iter = it;
    out.core = hooi_sweep(a, f);
    rec.core_norm = out.core.norm();
    const bool last = it == cfg.max_outer;
    if (last || (cfg.grad_every > 0 && it % cfg.grad_every == 0)) {
      const auto g = g_gradient_global(a, f);
      rec.rel_grad = relative_gradient(g.norm, rec.core_norm);
      out.rel_grad = rec.rel_grad;
      if (rec.rel_grad <= cfg.tol) out.status = SolveStatus::Converged;
    }
    rec.elapsed_s = clock.seconds();
    out.history.push_back(rec);
    if (out.status == SolveStatus::Converged) break;
  }
  out.factors = f;
  out.k = {a.dims()[0], a.dims()[1], a.dims()[2]};
  return out;
}

}  // namespace bks
