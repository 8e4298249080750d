#pragma once

#include "bks/tensor/dense_tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bks {

using Index3 = std::array<std::uint32_t, 3>;

struct Entry {
  Index3 index;
  double value;
};

// Coordinate-format sparse third-order tensor.
//
// Entries are sorted lexicographically by (i, j, k) at construction, duplicates
// are summed and exact zeros dropped. A (0,1)-symmetric tensor stores both
// (i, j, k) and (j, i, k). The object is immutable after construction.
class SparseTensor3 {
 public:
  SparseTensor3() = default;

  // Throws std::invalid_argument for out-of-range indices, or when sym12 is
  // requested and the entries are not (0,1)-symmetric.
  SparseTensor3(const Dims3& dims, std::vector<Entry> entries, bool sym12 = false) : dims_(dims) {
    for (const auto& e : entries) {
      for (std::size_t m = 0; m < 3; ++m) {
        if (e.index[m] >= dims_[m]) {
          throw std::invalid_argument("entry (" + std::to_string(e.index[0]) + "," +
                                      std::to_string(e.index[1]) + "," +
                                      std::to_string(e.index[2]) + ") outside dims " +
                                      dims_string(dims_));
        }
      }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.index < b.index; });
    index_.reserve(entries.size());
    value_.reserve(entries.size());
    for (std::size_t t = 0; t < entries.size();) {
      const Index3 idx = entries[t].index;
      double v = 0.0;
      for (; t < entries.size() && entries[t].index == idx; ++t) v += entries[t].value;
      if (v != 0.0) {
        index_.push_back(idx);
        value_.push_back(v);
      }
    }
    build_mode_orders();
    if (sym12) {
      if (!is_sym12()) throw std::invalid_argument("tensor declared (1,2)-symmetric but is not");
      sym12_ = true;
    }
  }

  static SparseTensor3 from_dense(const DenseTensor3& t, bool sym12 = false) {
    std::vector<Entry> entries;
    const auto& d = t.dims();
    for (std::size_t i = 0; i < d[0]; ++i)
      for (std::size_t j = 0; j < d[1]; ++j)
        for (std::size_t k = 0; k < d[2]; ++k)
          if (t(i, j, k) != 0.0) {
            entries.push_back({{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                static_cast<std::uint32_t>(k)},
                               t(i, j, k)});
          }
    return SparseTensor3(d, std::move(entries), sym12);
  }

  const Dims3& dims() const { return dims_; }
  std::size_t dim(std::size_t mode) const { return dims_[mode]; }
  std::size_t nnz() const { return value_.size(); }
  bool sym12() const { return sym12_; }

  const std::vector<Index3>& indices() const { return index_; }
  const std::vector<double>& values() const { return value_; }
  const Index3& index(std::size_t t) const { return index_[t]; }
  double value(std::size_t t) const { return value_[t]; }

  // Entry positions stably sorted by the given coordinate. Within one value of
  // that coordinate the lexicographic (i, j, k) order is preserved.
  const std::vector<std::uint32_t>& mode_order(std::size_t mode) const { return order_[mode]; }

  // Value at (i, j, k); zero when not stored.
  double at(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    const Index3 key{i, j, k};
    auto it = std::lower_bound(index_.begin(), index_.end(), key);
    if (it == index_.end() || *it != key) return 0.0;
    return value_[static_cast<std::size_t>(it - index_.begin())];
  }

  double squared_norm() const {
    double s = 0.0;
    for (double v : value_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(squared_norm()); }

  DenseTensor3 to_dense() const {
    DenseTensor3 t(dims_);
    for (std::size_t e = 0; e < nnz(); ++e) t(index_[e][0], index_[e][1], index_[e][2]) = value_[e];
    return t;
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out(nnz());
    for (std::size_t e = 0; e < nnz(); ++e) out[e] = {index_[e], value_[e]};
    return out;
  }

  // Exact check of A(i,j,k) == A(j,i,k) over stored entries.
  bool is_sym12() const {
    if (dims_[0] != dims_[1]) return false;
    for (std::size_t e = 0; e < nnz(); ++e) {
      const auto& ix = index_[e];
      if (at(ix[1], ix[0], ix[2]) != value_[e]) return false;
    }
    return true;
  }

  friend bool operator==(const SparseTensor3& a, const SparseTensor3& b) {
    return a.dims_ == b.dims_ && a.index_ == b.index_ && a.value_ == b.value_;
  }

 private:
  void build_mode_orders() {
    for (std::size_t m = 0; m < 3; ++m) {
      auto& ord = order_[m];
      ord.resize(nnz());
      std::iota(ord.begin(), ord.end(), 0u);
      if (m > 0) {
        std::stable_sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
          return index_[a][m] < index_[b][m];
        });
      }
    }
  }

  Dims3 dims_{0, 0, 0};
  std::vector<Index3> index_;
  std::vector<double> value_;
  std::array<std::vector<std::uint32_t>, 3> order_;
  bool sym12_ = false;
};

}  // namespace bks
