#pragma once

#include "bks/tensor/sparse_tensor.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace bks {

enum class SliceNormalization { None, Frobenius, Spectral };

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iters = 5000;
};

namespace detail {

struct SliceRange {
  std::size_t begin;
  std::size_t end;
};

// Positions (in mode-2 order) of the entries of each frontal slice.
inline std::vector<SliceRange> slice_ranges(const SparseTensor3& a) {
  std::vector<SliceRange> ranges(a.dim(2), SliceRange{0, 0});
  const auto& order = a.mode_order(2);
  std::size_t t = 0;
  while (t < order.size()) {
    const auto k = a.index(order[t])[2];
    const std::size_t b = t;
    while (t < order.size() && a.index(order[t])[2] == k) ++t;
    ranges[k] = {b, t};
  }
  return ranges;
}

}  // namespace detail

// Largest-magnitude eigenvalue magnitude of frontal slice k, by power iteration
// on the sparse slice. The slice must be symmetric.
inline double slice_spectral_radius(const SparseTensor3& a, std::size_t k,
                                    const PowerIterationOptions& opt = {}) {
  const auto ranges = detail::slice_ranges(a);
  const auto [b, e] = ranges.at(k);
  if (b == e) return 0.0;
  const auto& order = a.mode_order(2);
  const std::size_t n = a.dim(0);
  std::mt19937_64 rng(0x5eed + k);
  std::normal_distribution<double> gauss;
  std::vector<double> x(n), y(n);
  for (double& v : x) v = gauss(rng);
  double nx = 0.0;
  for (double v : x) nx += v * v;
  nx = std::sqrt(nx);
  for (double& v : x) v /= nx;
  double lambda = 0.0;
  for (int it = 0; it < opt.max_iters; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t t = b; t < e; ++t) {
      const auto& ix = a.index(order[t]);
      y[ix[0]] += a.value(order[t]) * x[ix[1]];
    }
    double ny = 0.0;
    for (double v : y) ny += v * v;
    ny = std::sqrt(ny);
    if (ny == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    const bool done = it > 0 && std::abs(ny - lambda) <= opt.tol * ny;
    lambda = ny;
    if (done) break;
  }
  return lambda;
}

// Divides every nonzero frontal slice by its Frobenius norm or by its spectral
// radius (largest eigenvalue magnitude). Zero slices are left untouched.
inline SparseTensor3 normalize_slices(const SparseTensor3& a, SliceNormalization method,
                                      const PowerIterationOptions& opt = {}) {
  if (method == SliceNormalization::None) return a;
  if (method == SliceNormalization::Spectral && !a.sym12() && !a.is_sym12()) {
    throw std::invalid_argument("spectral slice normalization needs symmetric slices");
  }
  const auto ranges = detail::slice_ranges(a);
  const auto& order = a.mode_order(2);
  std::vector<double> scale(a.dim(2), 1.0);
  for (std::size_t k = 0; k < a.dim(2); ++k) {
    const auto [b, e] = ranges[k];
    if (b == e) continue;
    double s = 0.0;
    if (method == SliceNormalization::Frobenius) {
      for (std::size_t t = b; t < e; ++t) s += a.value(order[t]) * a.value(order[t]);
      s = std::sqrt(s);
    } else {
      s = slice_spectral_radius(a, k, opt);
    }
    if (s > 0.0) scale[k] = s;
  }
  std::vector<Entry> entries = a.entries();
  for (auto& en : entries) en.value /= scale[en.index[2]];
  const bool sym = a.sym12() || (method == SliceNormalization::Spectral);
  return SparseTensor3(a.dims(), std::move(entries), sym);
}

}  // namespace bks
