#pragma once

// Randomized verification suites: each reproduces one of the quantitative
// inequalities (factorization sandwich, norm duality, the Stein-type level
// bound, its interpolated form, the block Cauchy-Schwarz step, and the
// end-to-end maximal-function construction) on seeded random instances and
// records observed extremal ratios against the proved constants.

#include "ncmax/dominant.hpp"
#include "ncmax/grid.hpp"
#include "ncmax/sequence.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ncmax {

struct SuiteConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  int dim = 2;        // suites over sequences cycle d in 1..dim
  int seq_len = 3;    // and N in 1..seq_len
  int grid_size = 64;
  int levels = 3;     // n_max
  std::vector<double> p_list = {1.0, 1.5, 2.0, 3.0};
  double tolerance = 1e-6;
  SolverConfig solver;
};

struct Violation {
  int trial;
  double ratio;
  std::string digest;  // instance hash, for reproduction
  std::string what;
};

struct VerificationReport {
  std::string suite;
  SuiteConfig config;
  std::vector<double> ratios;  // flat, per trial (and per inner check)
  double max_ratio = 0.0;
  double bound = 0.0;
  std::vector<Violation> violations;
  std::vector<int> skipped;  // non-converged trials, never silently dropped
  bool pass = false;
  double wall_time = 0.0;
};

// Items g* g with complex Gaussian g, scaled; deterministic per seed.
OperatorSequence random_positive_sequence(std::uint64_t seed, int d, int n,
                                          double scale);

// Grid function with iid complex Gaussian entries (general, non-Hermitian).
GridFunction random_grid_function(std::uint64_t seed, int d, int grid_size);

// Pointwise-PSD grid function (Wishart values).
GridFunction random_positive_grid_function(std::uint64_t seed, int d,
                                           int grid_size);

std::vector<VerificationReport> suite_lemma21(const SuiteConfig& config);
std::vector<VerificationReport> suite_duality(const SuiteConfig& config);
std::vector<VerificationReport> suite_stein(const SuiteConfig& config);
std::vector<VerificationReport> suite_cauchy_schwarz(const SuiteConfig& config);
std::vector<VerificationReport> suite_interpolation(const SuiteConfig& config);
std::vector<VerificationReport> suite_theorem(const SuiteConfig& config);

// All suites with the shared seed.
std::vector<VerificationReport> run_all(const SuiteConfig& config);

// Dispatch by name ("lemma21", "duality", "stein", "cauchy_schwarz",
// "interpolation", "theorem", "all"); throws for unknown names.
std::vector<VerificationReport> run_suite(const std::string& name,
                                          const SuiteConfig& config);

std::vector<std::string> suite_names();

// Worker count: NCMAX_THREADS when set, else the hardware default.
int thread_budget();

}  // namespace ncmax
