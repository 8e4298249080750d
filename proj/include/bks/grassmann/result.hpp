#pragma once

#include "bks/grassmann/factors.hpp"
#include "bks/tensor/dense_tensor.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace bks {

enum class SolveStatus { Converged, MaxIterations, LineSearchFailed, Stalled };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iters";
    case SolveStatus::LineSearchFailed: return "line_search_failed";
    default: return "stalled";
  }
}

struct IterationRecord {
  std::size_t iter = 0;
  double core_norm = 0.0;
  double rel_grad = NAN;     // NaN when not evaluated at this iteration
  bool small_gap = false;    // a singular value gap below 1e-8 relative was met
};

struct SolveResult {
  Factors factors;
  DenseTensor3 core;
  std::vector<IterationRecord> history;
  SolveStatus status = SolveStatus::MaxIterations;
  double rel_grad = NAN;
  std::size_t iterations = 0;
};

}  // namespace bks
