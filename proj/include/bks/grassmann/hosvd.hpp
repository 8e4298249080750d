#pragma once

#include "bks/grassmann/factors.hpp"
#include "bks/linalg.hpp"
#include "bks/tensor/dense_tensor.hpp"
#include "bks/tensor/unfold.hpp"

#include <stdexcept>
#include <string>

namespace bks {

// Leading left singular vectors of each unfolding. The symmetric variant takes
// mode 1 from mode 0.
inline Factors hosvd_truncated(const DenseTensor3& c, const Ranks& ranks, bool symmetric = false) {
  for (std::size_t m = 0; m < 3; ++m) {
    if (ranks[m] == 0 || ranks[m] > c.dim(m)) {
      throw std::invalid_argument("hosvd_truncated: rank " + std::to_string(ranks[m]) + " invalid for mode " +
                                  std::to_string(m) + " of dimension " + std::to_string(c.dim(m)));
    }
  }
  if (symmetric && (ranks[0] != ranks[1] || c.dim(0) != c.dim(1))) {
    throw std::invalid_argument("hosvd_truncated: symmetric variant needs equal modes 0 and 1");
  }
  auto lead = [&](std::size_t m) {
    return leading_left_singular(unfold(c, m), static_cast<Eigen::Index>(ranks[m])).vectors;
  };
  if (symmetric) return Factors::sym(lead(0), lead(2));
  return Factors::general(lead(0), lead(1), lead(2));
}

}  // namespace bks
