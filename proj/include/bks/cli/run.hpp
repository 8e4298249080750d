#pragma once

#include "bks/cli/run_spec.hpp"
#include "bks/diagnostics.hpp"
#include "bks/krylov_schur.hpp"
#include "bks/synthetic.hpp"
#include "bks/tensor/tns_io.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace bks::cli {

// Version of the CSV and JSON layouts written by run().
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kError = 1, kBadTensor = 2 };

struct LoadedTensor {
  SparseTensor3 tensor;
  std::optional<SyntheticTensor> synthetic;  // kept for the planted subspaces
};

// Reads or generates the tensor, fixes its symmetry flag and normalizes slices.
inline LoadedTensor load_tensor(const RunSpec& spec) {
  LoadedTensor out;
  if (spec.synthetic) {
    const auto& s = *spec.synthetic;
    out.synthetic = generate_synthetic(s.m, s.n, s.r1, s.r3, s.rho, s.seed);
    out.tensor = out.synthetic->tensor;
  } else {
    out.tensor = read_tns(spec.input);
  }
  SparseTensor3& a = out.tensor;
  bool sym = a.sym12();
  if (spec.symmetry == Symmetry::Yes) {
    if (!a.is_sym12()) throw std::invalid_argument("--symmetric yes, but the tensor is not (1,2)-symmetric");
    sym = true;
  } else if (spec.symmetry == Symmetry::No) {
    sym = false;
  } else {
    sym = sym || a.is_sym12();
  }
  if (sym != a.sym12()) a = SparseTensor3(a.dims(), a.entries(), sym);
  if (spec.normalization != SliceNormalization::None) {
    a = normalize_slices(a, spec.normalization);
    if (!sym && a.sym12()) a = SparseTensor3(a.dims(), a.entries(), false);
  }
  return out;
}

inline BKSConfig make_config(const RunSpec& spec) {
  BKSConfig cfg;
  cfg.ranks = spec.ranks;
  cfg.plan = ExpansionPlan{spec.variant, spec.s, spec.p};
  cfg.tol = spec.tol;
  cfg.max_outer = spec.resolved_max_outer();
  cfg.seed = spec.seed;
  return cfg;
}

// Header lines start with "# "; then iter,rel_grad,core_norm,elapsed_s with an
// empty rel_grad where it was not evaluated.
inline void write_csv(std::ostream& os, const RunSpec& spec, const BKSResult& r) {
  os << "# bkstensor convergence, schema " << kSchemaVersion << '\n';
  for (const auto& [key, value] : spec.echo()) os << "# " << key << ": " << value << '\n';
  if (spec.solver == Solver::Bks) os << "# k1=" << r.k[0] << " k2=" << r.k[1] << " k3=" << r.k[2] << '\n';
  os << "iter,rel_grad,core_norm,elapsed_s\n";
  for (const auto& h : r.history) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(6) << h.elapsed_s;
    os << h.iter << ',' << (std::isnan(h.rel_grad) ? std::string() : format_double(h.rel_grad)) << ','
       << format_double(h.core_norm) << ',' << t.str() << '\n';
  }
}

inline nlohmann::ordered_json summary_json(const RunSpec& spec, const LoadedTensor& t, const BKSResult& r,
                                           const SValueReport& sv) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  ordered_json s = ordered_json::object();
  for (const auto& [key, value] : spec.echo()) s[key] = value;
  j["spec"] = s;
  const auto& a = t.tensor;
  j["tensor"] = {{"dims", {a.dim(0), a.dim(1), a.dim(2)}},
                 {"nnz", a.nnz()},
                 {"norm", a.norm()},
                 {"symmetric", a.sym12()}};
  j["status"] = to_string(r.status);
  j["outer_iterations"] = r.history.empty() ? 0 : r.history.back().iter;
  j["rel_grad"] = std::isnan(r.rel_grad) ? ordered_json(nullptr) : ordered_json(r.rel_grad);
  j["core_norm"] = r.core.norm();
  j["ranks"] = {spec.ranks[0], spec.ranks[1], spec.ranks[2]};
  if (spec.solver == Solver::Bks) j["k"] = {r.k[0], r.k[1], r.k[2]};
  else j["k"] = nullptr;
  ordered_json modes = ordered_json::array();
  for (const auto& m : sv.modes) {
    modes.push_back({{"mode", m.mode + 1}, {"values", m.values}, {"next", m.next}, {"gap", m.gap}});
  }
  j["s_values"] = modes;
  if (t.synthetic) {
    j["planted_angle"] = {{"u", subspace_angle(r.factors.u, t.synthetic->signal_u())},
                          {"w", subspace_angle(r.factors.w, t.synthetic->signal_w())}};
  }
  j["notes"] = r.notes;
  return j;
}

// <prefix>U.txt, <prefix>V.txt, <prefix>W.txt (one row per line) and
// <prefix>core.tns.
inline void write_factors(const std::string& prefix, const BKSResult& r) {
  const Eigen::IOFormat fmt(Eigen::FullPrecision, Eigen::DontAlignCols, " ", "\n");
  const char* names[3] = {"U", "V", "W"};
  for (std::size_t m = 0; m < 3; ++m) {
    const std::string path = prefix + names[m] + ".txt";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << r.factors[m].format(fmt) << '\n';
  }
  write_tns(prefix + "core.tns", SparseTensor3::from_dense(r.core));
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

// Runs one solve and writes the requested outputs. A one-line summary goes to
// `out`, problems to `err`.
inline int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    spec.validate();
    const LoadedTensor t = load_tensor(spec);
    const BKSConfig cfg = make_config(spec);
    const BKSResult r = spec.solver == Solver::Bks ? bks_solve(t.tensor, cfg) : hooi_full(t.tensor, cfg);
    for (const auto& n : r.notes) err << "note: " << n << '\n';
    const SValueReport sv = s_values(t.tensor, r.factors);

    std::ostringstream csv;
    write_csv(csv, spec, r);
    if (!spec.csv_path.empty()) write_text(spec.csv_path, csv.str());
    if (!spec.json_path.empty()) write_text(spec.json_path, summary_json(spec, t, r, sv).dump(2) + "\n");
    if (!spec.factors_prefix.empty()) write_factors(spec.factors_prefix, r);
    if (spec.csv_path.empty() && spec.json_path.empty()) out << csv.str();

    out << to_string(spec.solver) << ": " << to_string(r.status) << " after "
        << (r.history.empty() ? 0 : r.history.back().iter) << " iterations, rel_grad "
        << (std::isnan(r.rel_grad) ? std::string("n/a") : format_double(r.rel_grad)) << ", |F| "
        << format_double(r.core.norm());
    if (spec.solver == Solver::Bks) out << ", k=(" << r.k[0] << "," << r.k[1] << "," << r.k[2] << ")";
    out << '\n';
    return kOk;
  } catch (const TnsParseError& e) {
    err << "error: " << spec.input << ": " << e.what() << '\n';
    return kBadTensor;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace bks::cli
