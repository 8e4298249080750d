#pragma once

#include "bks/krylov/block_basis.hpp"
#include "bks/krylov/block_step.hpp"
#include "bks/krylov/expansion_plan.hpp"
#include "bks/linalg.hpp"
#include "bks/tensor/contract.hpp"
#include "bks/tensor/symmetry.hpp"
#include "bks/tensor/ttm.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bks {

// Stage-1 blocks: h0 = A.(U0, V0, W0) and h1[m] = coordinates of the mode-m
// stage-1 contraction in the new block of that mode. In the symmetric case
// h1[1] is left empty (it mirrors h1[0]).
struct GradientBlocks {
  DenseTensor3 h0;
  std::array<DenseTensor3, 3> h1;
  bool symmetric = false;
};

// Norm of the Grassmann gradient at (U0, V0, W0) from the stage-1 blocks.
inline double krylov_gradient_norm(const GradientBlocks& g) {
  double s = 0.0;
  for (std::size_t m = 0; m < 3; ++m) {
    if (g.h1[m].dim(m) == 0 || g.h1[m].empty()) continue;
    const double t = contract_except(g.h0, g.h1[m], m).squaredNorm();
    s += (g.symmetric && m == 0) ? 2.0 * t : t;
  }
  return std::sqrt(s);
}

struct StepRecord {
  std::size_t stage = 0;
  std::size_t mode = 0;
  BlockPair pair;
  Eigen::Index new_columns = 0;
};

// Stage-by-stage block-Krylov expansion of (U0, V0, W0), or of (U0, W0) for a
// (0,1)-symmetric tensor. The tensor must outlive the object.
template <class Tensor>
class Expansion {
 public:
  Expansion(const Tensor& a, const ExpansionPlan& plan, const Eigen::MatrixXd& u0,
            const Eigen::MatrixXd& v0, const Eigen::MatrixXd& w0, const BlockStepOptions& opt = {})
      : a_(&a), plan_(plan), opt_(opt), symmetric_(false) {
    init({&u0, &v0, &w0});
  }

  Expansion(const Tensor& a, const ExpansionPlan& plan, const Eigen::MatrixXd& u0,
            const Eigen::MatrixXd& w0, const BlockStepOptions& opt = {})
      : a_(&a), plan_(plan), opt_(opt), symmetric_(true) {
    if (!check_sym12(a)) throw std::invalid_argument("symmetric expansion needs a (1,2)-symmetric tensor");
    init({&u0, &u0, &w0});
  }

  bool symmetric() const { return symmetric_; }
  const ExpansionPlan& plan() const { return plan_; }
  std::size_t stages_done() const { return stage_; }
  bool finished() const { return stage_ >= plan_.stages; }

  const BlockBasis& basis(std::size_t mode) const { return bases_[symmetric_ && mode == 1 ? 0 : mode]; }
  bool saturated(std::size_t mode) const {
    const auto& b = basis(mode);
    return b.cols() >= static_cast<Eigen::Index>(a_->dims()[mode]);
  }
  Eigen::Index columns(std::size_t mode) const { return basis(mode).cols(); }
  const std::vector<StepRecord>& steps() const { return steps_; }

  // Valid once the first stage has run.
  const GradientBlocks& gradient_blocks() const {
    if (stage_ == 0) throw std::logic_error("gradient blocks requested before stage 1");
    return grad_;
  }
  double gradient_norm() const { return krylov_gradient_norm(gradient_blocks()); }

  void next_stage() {
    if (finished()) return;
    ++stage_;
    std::array<std::size_t, 3> n{};
    for (std::size_t m = 0; m < 3; ++m) n[m] = basis(m).block_count();
    // Generators are taken from snapshots so that blocks of this stage do not feed
    // each other.
    const std::array<BlockBasis, 3> snap{bases_[0], symmetric_ ? bases_[0] : bases_[1], bases_[2]};
    for (std::size_t m = 0; m < 3; ++m) {
      if (symmetric_ && m == 1) continue;
      const std::size_t o1 = m == 0 ? 1 : 0;
      const std::size_t o2 = m == 2 ? 1 : 2;
      const bool tri = symmetric_ && m == 2;
      for (const auto& pr : stage_pairs(plan_, stage_, n[o1], n[o2], tri, done_[m])) {
        done_[m].push_back(pr);
        if (saturated(m)) break;
        const auto& b1 = snap[o1];
        const auto& b2 = snap[o2];
        const Eigen::MatrixXd g1 = b1.leading(pr.first, static_cast<Eigen::Index>(
                                                          generator_width(plan_, pr.first, b1.info(pr.first).cols)));
        const Eigen::MatrixXd g2 = b2.leading(pr.second, static_cast<Eigen::Index>(
                                                           generator_width(plan_, pr.second, b2.info(pr.second).cols)));
        if (g1.cols() == 0 || g2.cols() == 0) continue;
        auto step = block_step(*a_, m, g1, g2, bases_[m].matrix(), tri && pr.first == pr.second, opt_);
        bases_[m].append(step.basis, b1.info(pr.first).name, b2.info(pr.second).name);
        steps_.push_back({stage_, m, pr, step.basis.cols()});
        if (stage_ == 1 && pr.first == 0 && pr.second == 0) {
          if (m == 0) grad_.h0 = std::move(step.h_prev);
          grad_.h1[m] = std::move(step.h_new);
        }
      }
    }
    if (stage_ == 1 && grad_.h0.empty()) {
      grad_.h0 = ttm(*a_, right_factors(bases_[0].block(0), basis(1).block(0), bases_[2].block(0)));
    }
  }

  void run() {
    while (!finished()) next_stage();
  }

 private:
  void init(std::array<const Eigen::MatrixXd*, 3> f) {
    if (plan_.stages == 0) throw std::invalid_argument("expansion: at least one stage is required");
    if (plan_.p == 0 && plan_.variant != Variant::MaxBK) {
      throw std::invalid_argument("expansion: block width p must be positive");
    }
    static const char* names[3] = {"U", "V", "W"};
    for (std::size_t m = 0; m < 3; ++m) {
      if (f[m]->rows() != static_cast<Eigen::Index>(a_->dims()[m])) {
        throw std::invalid_argument("expansion: mode " + std::to_string(m) + " factor has " +
                                    std::to_string(f[m]->rows()) + " rows, tensor dimension is " +
                                    std::to_string(a_->dims()[m]));
      }
      if (f[m]->cols() == 0) {
        throw std::invalid_argument("expansion: empty starting block in mode " + std::to_string(m));
      }
      bases_[m] = BlockBasis(names[m], *f[m]);
    }
    grad_.symmetric = symmetric_;
    for (std::size_t m = 0; m < 3; ++m) {
      Dims3 d{static_cast<std::size_t>(f[0]->cols()), static_cast<std::size_t>(f[1]->cols()),
              static_cast<std::size_t>(f[2]->cols())};
      d[m] = 0;
      grad_.h1[m] = DenseTensor3(d);
    }
  }

  const Tensor* a_;
  ExpansionPlan plan_;
  BlockStepOptions opt_;
  bool symmetric_;
  std::size_t stage_ = 0;
  std::array<BlockBasis, 3> bases_;
  std::array<std::vector<BlockPair>, 3> done_;
  std::vector<StepRecord> steps_;
  GradientBlocks grad_;
};

struct ExpansionResult {
  BlockBasis x, y, z;
  std::array<bool, 3> saturated{};
  GradientBlocks gradient;
};

template <class Tensor>
ExpansionResult expand(const Tensor& a, const Eigen::MatrixXd& u0, const Eigen::MatrixXd& w0,
                       const ExpansionPlan& plan) {
  Expansion<Tensor> e(a, plan, u0, w0);
  e.run();
  return {e.basis(0), e.basis(1), e.basis(2), {e.saturated(0), e.saturated(1), e.saturated(2)},
          e.gradient_blocks()};
}

template <class Tensor>
ExpansionResult expand(const Tensor& a, const Eigen::MatrixXd& u0, const Eigen::MatrixXd& v0,
                       const Eigen::MatrixXd& w0, const ExpansionPlan& plan) {
  Expansion<Tensor> e(a, plan, u0, v0, w0);
  e.run();
  return {e.basis(0), e.basis(1), e.basis(2), {e.saturated(0), e.saturated(1), e.saturated(2)},
          e.gradient_blocks()};
}

}  // namespace bks
