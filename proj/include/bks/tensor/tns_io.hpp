#pragma once

#include "bks/tensor/sparse_tensor.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bks {

// Raised for malformed .tns input; line() is 1-based.
class TnsParseError : public std::runtime_error {
 public:
  TnsParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Reads "i j k value" lines with 1-based indices. An optional "# dims l m n"
// line fixes the dimensions; otherwise they are the largest indices seen.
// Other '#' lines and blank lines are skipped. Duplicates are summed.
inline SparseTensor3 read_tns(std::istream& in) {
  std::vector<Entry> entries;
  Dims3 dims{0, 0, 0};
  bool have_dims = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream hs(line.substr(first + 1));
      std::string word;
      if (hs >> word && word == "dims") {
        long long l = 0, m = 0, n = 0;
        if (!(hs >> l >> m >> n) || l <= 0 || m <= 0 || n <= 0) {
          throw TnsParseError(lineno, "malformed dims header");
        }
        dims = {static_cast<std::size_t>(l), static_cast<std::size_t>(m), static_cast<std::size_t>(n)};
        have_dims = true;
      }
      continue;
    }
    std::istringstream ls(line);
    long long i = 0, j = 0, k = 0;
    double v = 0.0;
    std::string extra;
    if (!(ls >> i >> j >> k >> v)) throw TnsParseError(lineno, "expected 'i j k value'");
    if (ls >> extra) throw TnsParseError(lineno, "trailing characters '" + extra + "'");
    constexpr long long max_index = std::numeric_limits<std::uint32_t>::max();
    if (i < 1 || j < 1 || k < 1 || i > max_index || j > max_index || k > max_index) {
      throw TnsParseError(lineno, "indices must be positive (1-based)");
    }
    if (have_dims && (static_cast<std::size_t>(i) > dims[0] || static_cast<std::size_t>(j) > dims[1] ||
                      static_cast<std::size_t>(k) > dims[2])) {
      throw TnsParseError(lineno, "index outside declared dims");
    }
    entries.push_back({{static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(j - 1),
                        static_cast<std::uint32_t>(k - 1)},
                       v});
  }
  if (!have_dims) {
    for (const auto& e : entries)
      for (std::size_t m = 0; m < 3; ++m) dims[m] = std::max<std::size_t>(dims[m], e.index[m] + 1);
  }
  return SparseTensor3(dims, std::move(entries));
}

inline SparseTensor3 read_tns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_tns(in);
}

// Writes the dims header and the sorted entries; values round-trip exactly.
inline void write_tns(std::ostream& out, const SparseTensor3& a) {
  out << "# dims " << a.dim(0) << ' ' << a.dim(1) << ' ' << a.dim(2) << '\n';
  char buf[64];
  for (std::size_t e = 0; e < a.nnz(); ++e) {
    const auto& ix = a.index(e);
    auto res = std::to_chars(buf, buf + sizeof(buf), a.value(e));
    out << ix[0] + 1 << ' ' << ix[1] + 1 << ' ' << ix[2] + 1 << ' '
        << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
}

inline void write_tns(const std::string& path, const SparseTensor3& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_tns(out, a);
}

}  // namespace bks
