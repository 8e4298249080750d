#pragma once

#include "bks/cli/run.hpp"

#include <CLI11.hpp>

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bks::cli {

struct GenerateSpec {
  SyntheticSpec synthetic;
  std::string output;
};

inline int generate(const GenerateSpec& g, std::ostream& out, std::ostream& err) {
  try {
    const auto& s = g.synthetic;
    const auto t = generate_synthetic(s.m, s.n, s.r1, s.r3, s.rho, s.seed);
    if (g.output.empty() || g.output == "-") {
      write_tns(out, t.tensor);
    } else {
      write_tns(g.output, t.tensor);
      out << "wrote " << g.output << ": " << dims_string(t.tensor.dims()) << ", " << t.tensor.nnz()
          << " nonzeros\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

inline Ranks parse_ranks(const std::string& text) {
  std::vector<std::size_t> v;
  std::stringstream ss(text);
  try {
    for (std::string item; std::getline(ss, item, ',');) {
      std::size_t pos = 0;
      v.push_back(std::stoull(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    }
  } catch (const std::exception&) {
    v.clear();
  }
  if (v.size() != 3) throw CLI::ValidationError("--ranks", "expected r1,r2,r3, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

// Entry point of the bkstensor tool. Flags of `run` may also come from a
// TOML/INI file given with --config, under a [run] section with the long flag
// names as keys; command-line flags take precedence.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Best low multilinear rank approximation of sparse third-order tensors"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read run flags from the [run] section of a TOML/INI file");

  GenerateSpec gen;
  auto* g = app.add_subcommand("generate", "write a synthetic (1,2)-symmetric signal plus noise tensor");
  g->add_option("--m", gen.synthetic.m, "size of modes 1 and 2")->capture_default_str();
  g->add_option("--n", gen.synthetic.n, "size of mode 3")->capture_default_str();
  g->add_option("--r1", gen.synthetic.r1, "signal rank in modes 1 and 2")->capture_default_str();
  g->add_option("--r3", gen.synthetic.r3, "signal rank in mode 3")->capture_default_str();
  g->add_option("--rho", gen.synthetic.rho, "noise level")->capture_default_str();
  g->add_option("--seed", gen.synthetic.seed, "random seed")->capture_default_str();
  g->add_option("-o,--output", gen.output, ".tns output path, '-' for stdout");

  RunSpec spec;
  std::string synthetic_text, ranks_text = "2,2,2", variant_text = "bk";
  std::string solver_text = "bks", norm_text = "none", sym_text = "auto";
  const std::map<std::string, Solver> solvers{{"bks", Solver::Bks}, {"hooi", Solver::Hooi}};
  const std::map<std::string, SliceNormalization> norms{{"none", SliceNormalization::None},
                                                        {"frobenius", SliceNormalization::Frobenius},
                                                        {"spectral", SliceNormalization::Spectral}};
  const std::map<std::string, Symmetry> syms{{"auto", Symmetry::Auto}, {"yes", Symmetry::Yes}, {"no", Symmetry::No}};
  std::size_t max_outer = 0;

  auto* r = app.add_subcommand("run", "solve and write convergence history and summary");
  r->configurable();
  r->fallthrough();  // lets `run --config FILE` reach the top-level option
  auto* in = r->add_option("-i,--input", spec.input, ".tns tensor file (1-based 'i j k value' lines)");
  auto* syn = r->add_option("--synthetic", synthetic_text, "generate instead: m,n,r1,r3,rho[,seed]");
  in->excludes(syn);
  r->add_option("--solver", solver_text, "bks or hooi")
      ->check(CLI::IsMember({"bks", "hooi"}, CLI::ignore_case))
      ->capture_default_str();
  r->add_option("--variant", variant_text, "min-bk, bk or max-bk")
      ->check(CLI::IsMember({"min-bk", "bk", "max-bk"}, CLI::ignore_case))
      ->capture_default_str();
  r->add_option("--ranks", ranks_text, "r1,r2,r3")->capture_default_str();
  r->add_option("--s", spec.s, "expansion stages")->capture_default_str();
  r->add_option("--p", spec.p, "block width")->capture_default_str();
  r->add_option("--tol", spec.tol, "relative gradient tolerance")->capture_default_str();
  auto* mo = r->add_option("--max-outer", max_outer, "outer iterations (bks, default 100) or sweeps (hooi, 1000)");
  r->add_option("--seed", spec.seed, "seed of the random start")->capture_default_str();
  r->add_option("--normalize", norm_text, "slice normalization: none, frobenius or spectral")
      ->check(CLI::IsMember({"none", "frobenius", "spectral"}, CLI::ignore_case))
      ->capture_default_str();
  r->add_option("--symmetric", sym_text, "treat as (1,2)-symmetric: auto, yes or no")
      ->check(CLI::IsMember({"auto", "yes", "no"}, CLI::ignore_case))
      ->capture_default_str();
  r->add_option("--csv", spec.csv_path, "convergence history output");
  r->add_option("--json", spec.json_path, "summary output");
  r->add_option("--factors-prefix", spec.factors_prefix, "write <prefix>U.txt, V.txt, W.txt and core.tns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  if (*g) return generate(gen, out, err);

  try {
    if (in->count() == 0 && syn->count() == 0) throw CLI::RequiredError("--input or --synthetic");
    spec.ranks = parse_ranks(ranks_text);
    spec.variant = parse_variant(CLI::detail::to_lower(variant_text));
    spec.solver = solvers.at(CLI::detail::to_lower(solver_text));
    spec.normalization = norms.at(CLI::detail::to_lower(norm_text));
    spec.symmetry = syms.at(CLI::detail::to_lower(sym_text));
    if (mo->count() > 0) spec.max_outer = max_outer;
    if (syn->count() > 0) spec.synthetic = parse_synthetic(synthetic_text, spec.seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return run(spec, out, err);
}

}  // namespace bks::cli
