#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bks {

enum class Variant { MinBK, BK, MaxBK };

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::MinBK: return "min-bk";
    case Variant::BK: return "bk";
    default: return "max-bk";
  }
}

inline Variant parse_variant(const std::string& s) {
  if (s == "min-bk") return Variant::MinBK;
  if (s == "bk") return Variant::BK;
  if (s == "max-bk") return Variant::MaxBK;
  throw std::invalid_argument("unknown variant '" + s + "' (expected min-bk, bk or max-bk)");
}

struct ExpansionPlan {
  Variant variant = Variant::BK;
  std::size_t stages = 2;
  std::size_t p = 4;  // ignored by max-BK
};

// Indices of the two generating blocks; `first` belongs to the lower of the
// two other modes.
struct BlockPair {
  std::size_t first = 0;
  std::size_t second = 0;
  friend bool operator==(const BlockPair&, const BlockPair&) = default;
};

// Columns of block `index` used as a generator: block 0 and every max-BK block
// in full, otherwise the first p.
inline std::size_t generator_width(const ExpansionPlan& plan, std::size_t index, std::size_t width) {
  if (index == 0 || plan.variant == Variant::MaxBK) return width;
  return std::min(plan.p, width);
}

// Block pairs combined in `stage` (1-based) by one mode. `rows` and `cols`
// count the blocks of the generating modes at the start of the stage. A
// triangular pattern (symmetric mode 3, both generators from mode 1) only uses
// pairs with first <= second. `done` holds the pairs this mode has already used.
inline std::vector<BlockPair> stage_pairs(const ExpansionPlan& plan, std::size_t stage,
                                          std::size_t rows, std::size_t cols, bool triangular,
                                          const std::vector<BlockPair>& done) {
  if (stage == 0) throw std::invalid_argument("stage_pairs: stages are numbered from 1");
  std::vector<BlockPair> out;
  if (rows == 0 || cols == 0) return out;
  auto valid = [&](std::size_t i, std::size_t j) {
    if (i >= rows || j >= cols || (triangular && i > j)) return false;
    for (const auto& d : done)
      if (d.first == i && d.second == j) return false;
    return true;
  };
  auto add = [&](std::size_t i, std::size_t j) {
    if (valid(i, j)) out.push_back({i, j});
  };
  const std::size_t t = stage - 1;
  switch (plan.variant) {
    case Variant::MinBK:
      add(std::min(t, rows - 1), std::min(t, cols - 1));
      break;
    case Variant::BK:
      if (t == 0) {
        add(0, 0);
        break;
      }
      for (std::size_t c = 0; c < t; ++c) {
        add(c, t);
        if (!triangular) add(t, c);
      }
      break;
    case Variant::MaxBK:
      for (std::size_t c = 0; c < std::max(rows, cols); ++c) {
        if (triangular) {
          for (std::size_t j = 0; j <= c; ++j) add(j, c);
        } else {
          for (std::size_t j = 0; j < c; ++j) {
            add(j, c);
            add(c, j);
          }
          add(c, c);
        }
      }
      break;
  }
  return out;
}

// Basis sizes (k1, k2, k3) after each stage assuming no deflation and
// unbounded dimensions. In the symmetric case k2 = k1.
inline std::vector<std::array<std::size_t, 3>> nominal_counts(const ExpansionPlan& plan,
                                                              const std::array<std::size_t, 3>& ranks,
                                                              bool symmetric) {
  std::array<std::vector<std::size_t>, 3> widths;
  std::array<std::vector<BlockPair>, 3> done;
  for (std::size_t m = 0; m < 3; ++m) widths[m] = {ranks[m]};
  if (symmetric) widths[1] = widths[0];
  std::vector<std::array<std::size_t, 3>> out;
  auto total = [](const std::vector<std::size_t>& w) {
    std::size_t s = 0;
    for (auto x : w) s += x;
    return s;
  };
  for (std::size_t stage = 1; stage <= plan.stages; ++stage) {
    const std::array<std::size_t, 3> n{widths[0].size(), widths[1].size(), widths[2].size()};
    std::array<std::vector<std::size_t>, 3> added;
    for (std::size_t m = 0; m < 3; ++m) {
      if (symmetric && m == 1) continue;
      const std::size_t o1 = m == 0 ? 1 : 0;
      const std::size_t o2 = m == 2 ? 1 : 2;
      const bool tri = symmetric && m == 2;
      for (const auto& pr : stage_pairs(plan, stage, n[o1], n[o2], tri, done[m])) {
        const std::size_t a = generator_width(plan, pr.first, widths[o1][pr.first]);
        const std::size_t b = generator_width(plan, pr.second, widths[o2][pr.second]);
        added[m].push_back(tri && pr.first == pr.second ? a * (a + 1) / 2 : a * b);
        done[m].push_back(pr);
      }
    }
    for (std::size_t m = 0; m < 3; ++m)
      widths[m].insert(widths[m].end(), added[m].begin(), added[m].end());
    if (symmetric) widths[1] = widths[0];
    out.push_back({total(widths[0]), total(widths[1]), total(widths[2])});
  }
  return out;
}

}  // namespace bks
