#pragma once

#include "bks/tensor/sparse_tensor.hpp"

#include <stdexcept>
#include <vector>

namespace bks {

inline bool check_sym12(const SparseTensor3& a) { return a.is_sym12(); }

inline bool check_sym12(const DenseTensor3& a) {
  const auto& d = a.dims();
  if (d[0] != d[1]) return false;
  for (std::size_t k = 0; k < d[2]; ++k)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (a(i, j, k) != a(j, i, k)) return false;
  return true;
}

// (A + A with modes 0 and 1 swapped) / 2, flagged symmetric.
inline SparseTensor3 symmetrize12(const SparseTensor3& a) {
  if (a.dim(0) != a.dim(1)) {
    throw std::invalid_argument("symmetrize12: dims " + dims_string(a.dims()) +
                                " are not square in modes 0 and 1");
  }
  std::vector<Entry> entries;
  entries.reserve(2 * a.nnz());
  for (std::size_t e = 0; e < a.nnz(); ++e) {
    const auto& ix = a.index(e);
    const double half = 0.5 * a.value(e);
    entries.push_back({ix, half});
    entries.push_back({{ix[1], ix[0], ix[2]}, half});
  }
  return SparseTensor3(a.dims(), std::move(entries), true);
}

}  // namespace bks
