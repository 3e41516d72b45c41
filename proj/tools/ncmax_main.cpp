// ncmax command-line front end: sequence/grid I/O, norm and dominant
// computations, the maximal-function construction, verification suites and
// the 2x2 grid-search oracle.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage or input
// error, 3 numerical non-convergence.

#include "ncmax/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

namespace {

using namespace ncmax;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string input;
  std::string output;
  std::string p_text = "2";
  std::string kind = "linf-pos";
  std::string suite = "all";
  std::string format = "json";
  std::vector<std::string> p_list;
  std::uint64_t seed = 0;
  int trials = 100;
  int dim = 2;
  int len = 3;
  int grid_size = 64;
  int levels = 3;
  double tol = 1e-6;
  double resolution = 1e-4;
  SolverConfig solver;
};

int cmd_norm(const Options& opt) {
  OperatorSequence seq = sequence_from_json(load_json_file(opt.input));
  double p = parse_exponent(opt.p_text);
  if (opt.kind == "l1-pos") {
    std::printf("value %.17g\n", l1_pos_norm(seq, p));
    return kExitPass;
  }
  if (opt.kind != "linf-pos")
    throw std::invalid_argument("--kind must be linf-pos or l1-pos");
  NormResult r = linf_pos_norm(seq, p, opt.solver);
  std::printf("value %.17g\n", r.value);
  std::printf("gap %.17g\n", r.gap);
  if (!opt.output.empty() && r.certificate) {
    save_json_file(opt.output, matrix_to_json(r.certificate->mat()));
    std::printf("certificate %s\n", opt.output.c_str());
  }
  return r.converged ? kExitPass : kExitNumerical;
}

int cmd_dominate(const Options& opt) {
  OperatorSequence seq = sequence_from_json(load_json_file(opt.input));
  double p = parse_exponent(opt.p_text);
  DominantSolution sol = solve_dominant_general(seq, p, opt.solver);
  json out{{"dominant", matrix_to_json(sol.dominant.mat())},
           {"primal_value", sol.primal_value},
           {"dual_value", sol.dual_value},
           {"dual_sequence", sequence_to_json(sol.dual_sequence)},
           {"gap", sol.gap},
           {"iterations", sol.iterations},
           {"converged", sol.converged}};
  if (!opt.output.empty())
    save_json_file(opt.output, out);
  else
    std::cout << out.dump(2) << '\n';
  return sol.converged ? kExitPass : kExitNumerical;
}

int cmd_maximal(const Options& opt) {
  GridFunction f = grid_from_json(load_json_file(opt.input));
  double p = parse_exponent(opt.p_text);
  if (is_inf_exponent(p) || p < 2.0)
    throw std::invalid_argument(
        "maximal: requires an exponent in the theorem's range 2 <= p < inf");

  GridFunction absf = abs_grid(f);
  std::vector<GridFunction> tabs;
  for (int n = 0; n <= opt.levels; ++n)
    tabs.push_back(avg_apply(absf, DyadicLevel{n}));

  bool all_converged = true;
  double feas_min = std::numeric_limits<double>::infinity();
  GridFunction F;
  F.values.reserve(f.values.size());
  for (Eigen::Index j = 0; j < f.grid_size(); ++j) {
    std::vector<HermitianOperator> cons;
    for (int n = 0; n <= opt.levels; ++n)
      cons.push_back(hermitize(tabs[static_cast<std::size_t>(n)]
                                   .values[static_cast<std::size_t>(j)]));
    OperatorSequence seq = OperatorSequence::make(std::move(cons), true);
    DominantSolution sol = solve_dominant_general(seq, p, opt.solver);
    all_converged = all_converged && sol.converged;
    for (const auto& x : seq.items)
      feas_min = std::min(feas_min, psd_check(sol.dominant - x).min_eig);
    F.values.push_back(sol.dominant.mat());
  }

  double fn = grid_lp_norm(f, p);
  double Fn = grid_lp_norm(F, p);
  json summary{{"f_norm", fn},
               {"F_norm", Fn},
               {"ratio", fn > 0 ? Fn / fn : 0.0},
               {"bound", std::pow(4.0, 1.0 + 2.0 / p)},
               {"feasibility_min_eig", feas_min},
               {"converged", all_converged}};
  if (!opt.output.empty()) save_json_file(opt.output, grid_to_json(F));
  std::cout << summary.dump(2) << '\n';
  return all_converged ? kExitPass : kExitNumerical;
}

int cmd_verify(const Options& opt) {
  SuiteConfig cfg;
  cfg.seed = opt.seed;
  cfg.trials = opt.trials;
  cfg.dim = opt.dim;
  cfg.seq_len = opt.len;
  cfg.grid_size = opt.grid_size;
  cfg.levels = opt.levels;
  cfg.tolerance = opt.tol;
  cfg.solver = opt.solver;
  if (!opt.p_list.empty()) {
    cfg.p_list.clear();
    for (const auto& t : opt.p_list) cfg.p_list.push_back(parse_exponent(t));
  }

  std::vector<VerificationReport> reports = run_suite(opt.suite, cfg);
  bool all_pass = true;
  json out = json::array();
  for (const auto& rep : reports) {
    out.push_back(report_to_json(rep));
    all_pass = all_pass && rep.pass;
    std::printf("%-24s max_ratio %.9g bound %.9g %s\n", rep.suite.c_str(),
                rep.max_ratio, rep.bound, rep.pass ? "PASS" : "FAIL");
    for (const auto& v : rep.violations)
      std::printf("  violation trial %d ratio %.9g digest %s: %s\n", v.trial,
                  v.ratio, v.digest.c_str(), v.what.c_str());
  }
  if (!opt.output.empty()) {
    if (opt.format == "csv") {
      std::ofstream os(opt.output);
      os << reports_to_csv(reports);
    } else {
      save_json_file(opt.output, out);
    }
  }
  return all_pass ? kExitPass : kExitVerifyFail;
}

int cmd_oracle(const Options& opt) {
  OperatorSequence seq = sequence_from_json(load_json_file(opt.input));
  double p = parse_exponent(opt.p_text);
  std::printf("value %.17g\n", brute_force_oracle(seq, p, opt.resolution));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncmax: vector-valued operator norms, dominant solves, dyadic "
               "averaging and inequality verification"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "input JSON path");
    sub->add_option("--output", opt.output, "output path");
    sub->add_option("--p", opt.p_text, "exponent (number >= 1 or 'inf')");
    sub->add_option("--tol", opt.solver.tol, "solver gap tolerance");
  };

  CLI::App* norm = app.add_subcommand("norm", "vector-valued norm of a sequence");
  add_common(norm);
  norm->add_option("--kind", opt.kind, "linf-pos or l1-pos");

  CLI::App* dominate = app.add_subcommand("dominate", "least dominating operator");
  add_common(dominate);

  CLI::App* maximal = app.add_subcommand("maximal", "maximal-function construction");
  add_common(maximal);
  maximal->add_option("--levels", opt.levels, "largest dyadic level n_max");

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", opt.suite, "suite name or 'all'");
  verify->add_option("--seed", opt.seed, "RNG seed");
  verify->add_option("--trials", opt.trials, "trials per suite");
  verify->add_option("--dim", opt.dim, "matrix dimension cap");
  verify->add_option("--len", opt.len, "sequence length cap");
  verify->add_option("--grid-size", opt.grid_size, "grid points");
  verify->add_option("--levels", opt.levels, "largest dyadic level n_max");
  verify->add_option("--tol", opt.tol, "bound compliance tolerance");
  verify->add_option("--p", opt.p_list, "exponent list");
  verify->add_option("--output", opt.output, "report path");
  verify->add_option("--format", opt.format, "json or csv");

  CLI::App* oracle = app.add_subcommand("oracle", "2x2 grid-search oracle");
  add_common(oracle);
  oracle->add_option("--resolution", opt.resolution, "refinement resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (norm->parsed()) return cmd_norm(opt);
    if (dominate->parsed()) return cmd_dominate(opt);
    if (maximal->parsed()) return cmd_maximal(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (oracle->parsed()) return cmd_oracle(opt);
  } catch (const ncmax::numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
