#include "ncmax/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace ncmax {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t suite_id, int trial) {
  return splitmix64(seed ^ splitmix64(suite_id * 0x100000001b3ull + trial));
}

std::string hex_digest(std::uint64_t s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(s));
  return std::string(buf);
}

GeneralOperator random_complex(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  GeneralOperator g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  return g;
}

struct TrialResult {
  std::vector<double> ratios;
  std::vector<Violation> violations;
  bool skipped = false;
};

void parallel_for(int n, const std::function<void(int)>& body) {
  int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

// Runs `trials` bodies (in parallel, deterministic assembly order) and folds
// them into a report against `bound`.
VerificationReport run_trials(const std::string& name, const SuiteConfig& config,
                              double bound,
                              const std::function<TrialResult(int)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, [&](int i) {
    results[static_cast<std::size_t>(i)] = body(i);
  });

  VerificationReport rep;
  rep.suite = name;
  rep.config = config;
  rep.bound = bound;
  for (int i = 0; i < config.trials; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    if (r.skipped) {
      rep.skipped.push_back(i);
      continue;
    }
    for (double v : r.ratios) {
      rep.ratios.push_back(v);
      rep.max_ratio = std::max(rep.max_ratio, v);
    }
    for (const auto& v : r.violations) rep.violations.push_back(v);
  }
  bool too_many_skips =
      rep.skipped.size() * 20 > static_cast<std::size_t>(config.trials);
  rep.pass = rep.violations.empty() &&
             rep.max_ratio <= bound * (1.0 + config.tolerance) && !too_many_skips;
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<double> finite_p(const std::vector<double>& ps, double lo, double hi) {
  std::vector<double> out;
  for (double p : ps)
    if (!is_inf_exponent(p) && p >= lo && p <= hi) out.push_back(p);
  return out;
}

// Level ensembles g_0..g_{n_max}, pointwise positive.
std::vector<GridFunction> random_level_grids(std::uint64_t seed, int d, int L,
                                             int n_max) {
  std::vector<GridFunction> gs;
  for (int n = 0; n <= n_max; ++n)
    gs.push_back(random_positive_grid_function(splitmix64(seed + n), d, L));
  return gs;
}

GridFunction grid_sum(const std::vector<GridFunction>& gs) {
  GridFunction out = gs.front();
  for (std::size_t i = 1; i < gs.size(); ++i)
    for (std::size_t j = 0; j < out.values.size(); ++j)
      out.values[j] += gs[i].values[j];
  return out;
}

HermitianOperator pinv_sqrt(const HermitianOperator& x, double rel_cut) {
  SpectralDecomposition sd = spectral(x);
  const Eigen::Index d = x.dim();
  double top = std::max(sd.eigenvalues(d - 1), 0.0);
  double cut = rel_cut * (top > 0 ? top : 1.0);
  Eigen::VectorXd v(d);
  for (Eigen::Index i = 0; i < d; ++i)
    v(i) = sd.eigenvalues(i) > cut ? 1.0 / std::sqrt(sd.eigenvalues(i)) : 0.0;
  return hermitize(sd.eigenvectors * v.asDiagonal() * sd.eigenvectors.adjoint());
}

}  // namespace

int thread_budget() {
  if (const char* env = std::getenv("NCMAX_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

OperatorSequence random_positive_sequence(std::uint64_t seed, int d, int n,
                                          double scale) {
  std::mt19937_64 rng(seed);
  std::vector<HermitianOperator> items;
  items.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    GeneralOperator g = random_complex(rng, d);
    items.push_back(hermitize(scale * (g.adjoint() * g)));
  }
  return OperatorSequence::make(std::move(items), true);
}

GridFunction random_grid_function(std::uint64_t seed, int d, int grid_size) {
  std::mt19937_64 rng(seed);
  std::vector<GeneralOperator> vals;
  vals.reserve(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) vals.push_back(random_complex(rng, d));
  return GridFunction::make(std::move(vals));
}

GridFunction random_positive_grid_function(std::uint64_t seed, int d,
                                           int grid_size) {
  std::mt19937_64 rng(seed);
  std::vector<GeneralOperator> vals;
  vals.reserve(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    GeneralOperator g = random_complex(rng, d);
    vals.push_back((g.adjoint() * g) / d);
  }
  return GridFunction::make(std::move(vals));
}

std::vector<VerificationReport> suite_lemma21(const SuiteConfig& config) {
  std::vector<VerificationReport> reports;
  std::vector<double> ps = config.p_list;
  for (double p : ps) {
    auto body = [&, p](int trial) -> TrialResult {
      TrialResult res;
      std::uint64_t s = sub_seed(config.seed, 21, trial);
      int d = 1 + trial % config.dim;
      int n = 1 + (trial / config.dim) % config.seq_len;
      OperatorSequence seq = random_positive_sequence(s, d, n, 1.0);
      NormResult nr = linf_pos_norm(seq, p, config.solver);
      if (!nr.converged) {
        res.skipped = true;
        return res;
      }
      Factorization fac = factorize_from_dominant(seq, *nr.certificate);
      double vfac = factorization_value(fac, p);
      // random similarity perturbations of the canonical factorization
      std::mt19937_64 rng(splitmix64(s ^ 0xfacu));
      for (int k = 0; k < 50; ++k) {
        GeneralOperator w =
            GeneralOperator::Identity(d, d) + 0.35 * random_complex(rng, d);
        GeneralOperator winv = w.inverse();
        Factorization pert;
        pert.left = fac.left * w;
        pert.right = w.adjoint() * fac.right;
        for (const auto& z : fac.middles)
          pert.middles.push_back(winv * z * winv.adjoint());
        vfac = std::min(vfac, factorization_value(pert, p));
      }
      double ratio = vfac > 0 ? nr.value / vfac : 1.0;
      res.ratios.push_back(ratio);
      if (ratio < 1.0 - 1e-6)
        res.violations.push_back({trial, ratio, hex_digest(s),
                                  "positive norm fell below factorization value"});
      if (!is_inf_exponent(p)) {
        // l1 equality through the square-root split
        L1Factorization split;
        for (const auto& x : seq.items) {
          GeneralOperator r = matrix_power(x, 0.5).mat();
          split.lefts.push_back(r);
          split.rights.push_back(r);
        }
        double lhs = l1_factorization_value(split, p);
        double rhs = l1_pos_norm(seq, p);
        if (std::abs(lhs - rhs) > 1e-9 * (1.0 + rhs))
          res.violations.push_back({trial, lhs / (rhs > 0 ? rhs : 1.0),
                                    hex_digest(s), "l1 split equality failed"});
      }
      return res;
    };
    std::string label = is_inf_exponent(p) ? "inf" : std::to_string(p);
    reports.push_back(run_trials("lemma21[p=" + label + "]", config, 4.0, body));
  }
  return reports;
}

std::vector<VerificationReport> suite_duality(const SuiteConfig& config) {
  std::vector<VerificationReport> reports;
  for (double p : finite_p(config.p_list, 1.0, kPInf)) {
    const double q = conjugate_exponent(p);
    auto body = [&, p, q](int trial) -> TrialResult {
      TrialResult res;
      std::uint64_t s = sub_seed(config.seed, 22, trial);
      int d = 1 + trial % config.dim;
      int n = 1 + (trial / config.dim) % config.seq_len;
      OperatorSequence y = random_positive_sequence(s, d, n, 1.0);
      double target = l1_pos_norm(y, p);

      OperatorSequence witness =
          p > 1.0 ? dual_witness_linf(y, p)
                  : OperatorSequence::make(
                        std::vector<HermitianOperator>(
                            static_cast<std::size_t>(n),
                            HermitianOperator::identity(d)),
                        true);
      NormResult wnorm = linf_pos_norm(witness, q, config.solver);
      if (!wnorm.converged) {
        res.skipped = true;
        return res;
      }
      double achieved = pairing(witness, y) / wnorm.value;
      double ratio = target > 0 ? achieved / target : 1.0;
      res.ratios.push_back(ratio);
      if (std::abs(ratio - 1.0) > 1e-7)
        res.violations.push_back({trial, ratio, hex_digest(s),
                                  "witness pairing missed the l1 norm"});

      // Random positive probes, normalized into the dual unit ball through
      // the feasible bound ||sum x_n||_q; must never exceed the norm.
      std::mt19937_64 rng(splitmix64(s ^ 0xd0a1u));
      for (int k = 0; k < 500; ++k) {
        OperatorSequence probe =
            random_positive_sequence(rng(), d, n, 1.0);
        double ub = l1_pos_norm(probe, q);  // = ||sum probe_n||_q, feasible a
        if (ub <= 0) continue;
        double val = pairing(probe, y) / ub;
        if (val > target * (1.0 + 1e-7))
          res.violations.push_back({trial, val / target, hex_digest(s),
                                    "probe exceeded the l1 norm"});
      }
      return res;
    };
    reports.push_back(run_trials("duality[p=" + std::to_string(p) + "]", config,
                                 1.0, body));
  }
  return reports;
}

std::vector<VerificationReport> suite_stein(const SuiteConfig& config) {
  auto instance = [&](int trial) {
    return random_level_grids(sub_seed(config.seed, 31, trial), config.dim,
                              config.grid_size, config.levels);
  };

  auto body = [&](int trial) -> TrialResult {
    TrialResult res;
    auto gs = instance(trial);
    GridFunction tsum = avg_apply(gs[0], DyadicLevel{0});
    for (int n = 1; n <= config.levels; ++n) {
      GridFunction t = avg_apply(gs[static_cast<std::size_t>(n)], DyadicLevel{n});
      for (std::size_t j = 0; j < tsum.values.size(); ++j)
        tsum.values[j] += t.values[j];
    }
    double denom = grid_lp_norm(grid_sum(gs), 2.0);
    res.ratios.push_back(denom > 0 ? grid_lp_norm(tsum, 2.0) / denom : 0.0);
    return res;
  };
  std::vector<VerificationReport> reports;
  reports.push_back(run_trials("stein", config, 4.0, body));

  if (config.levels <= 4) {
    auto perm_body = [&](int trial) -> TrialResult {
      TrialResult res;
      auto gs = instance(trial);
      const int L = config.levels;
      // T_n g_m for all pairs, then every level assignment
      std::vector<std::vector<GridFunction>> tg(static_cast<std::size_t>(L + 1));
      for (int n = 0; n <= L; ++n)
        for (int m = 0; m <= L; ++m)
          tg[static_cast<std::size_t>(n)].push_back(
              avg_apply(gs[static_cast<std::size_t>(m)], DyadicLevel{n}));
      double denom = grid_lp_norm(grid_sum(gs), 2.0);
      std::vector<int> perm(static_cast<std::size_t>(L + 1));
      for (int i = 0; i <= L; ++i) perm[static_cast<std::size_t>(i)] = i;
      double worst = 0.0;
      do {
        GridFunction acc = tg[0][static_cast<std::size_t>(perm[0])];
        for (int n = 1; n <= L; ++n) {
          const GridFunction& t =
              tg[static_cast<std::size_t>(n)][static_cast<std::size_t>(perm[static_cast<std::size_t>(n)])];
          for (std::size_t j = 0; j < acc.values.size(); ++j)
            acc.values[j] += t.values[j];
        }
        worst = std::max(worst, grid_lp_norm(acc, 2.0));
      } while (std::next_permutation(perm.begin(), perm.end()));
      res.ratios.push_back(denom > 0 ? worst / denom : 0.0);
      return res;
    };
    reports.push_back(run_trials("stein_perm", config, 4.0, perm_body));
  }
  return reports;
}

std::vector<VerificationReport> suite_cauchy_schwarz(const SuiteConfig& config) {
  std::vector<double> ps = finite_p(config.p_list, 1.0, kPInf);
  auto body = [&](int trial) -> TrialResult {
    TrialResult res;
    std::uint64_t s = sub_seed(config.seed, 33, trial);
    const int d = config.dim, L = config.grid_size;
    std::vector<GridFunction> as, bs;
    for (int n = 0; n <= config.levels; ++n) {
      as.push_back(random_grid_function(splitmix64(s + 2 * n), d, L));
      bs.push_back(random_grid_function(splitmix64(s + 2 * n + 1), d, L));
    }
    auto accumulate = [&](const std::vector<GridFunction>& u,
                          const std::vector<GridFunction>& v) {
      GridFunction acc;
      acc.values.assign(static_cast<std::size_t>(L), GeneralOperator::Zero(d, d));
      for (int n = 0; n <= config.levels; ++n) {
        GridFunction prod;
        prod.values.reserve(static_cast<std::size_t>(L));
        for (int j = 0; j < L; ++j)
          prod.values.push_back(
              u[static_cast<std::size_t>(n)].values[static_cast<std::size_t>(j)].adjoint() *
              v[static_cast<std::size_t>(n)].values[static_cast<std::size_t>(j)]);
        GridFunction t = avg_apply(prod, DyadicLevel{n});
        for (int j = 0; j < L; ++j)
          acc.values[static_cast<std::size_t>(j)] += t.values[static_cast<std::size_t>(j)];
      }
      return acc;
    };
    GridFunction alpha = accumulate(as, as);
    GridFunction beta = accumulate(bs, bs);
    GridFunction gamma = accumulate(as, bs);

    for (int j = 0; j < L; ++j) {
      const auto& al = alpha.values[static_cast<std::size_t>(j)];
      const auto& be = beta.values[static_cast<std::size_t>(j)];
      const auto& ga = gamma.values[static_cast<std::size_t>(j)];
      // block PSD identity from the Gram construction
      GeneralOperator block(2 * d, 2 * d);
      block.topLeftCorner(d, d) = al;
      block.topRightCorner(d, d) = ga;
      block.bottomLeftCorner(d, d) = ga.adjoint();
      block.bottomRightCorner(d, d) = be;
      if (!psd_check(hermitize(block), 1e-8).is_psd)
        res.violations.push_back({trial, 0.0, hex_digest(s), "block matrix not PSD"});
      // contraction extraction through pseudo-inverse square roots
      GeneralOperator y = pinv_sqrt(hermitize(al), 1e-6).mat() * ga *
                          pinv_sqrt(hermitize(be), 1e-6).mat();
      double ynorm = schatten_norm(y, kPInf);
      if (ynorm > 1.0 + 1e-7)
        res.violations.push_back({trial, ynorm, hex_digest(s),
                                  "extracted middle factor is not a contraction"});
    }
    for (double p : ps) {
      double lhs = grid_lp_norm(gamma, p);
      double rhs = std::sqrt(grid_lp_norm(alpha, p) * grid_lp_norm(beta, p));
      res.ratios.push_back(rhs > 0 ? lhs / rhs : 0.0);
    }
    return res;
  };
  return {run_trials("cauchy_schwarz", config, 1.0, body)};
}

std::vector<VerificationReport> suite_interpolation(const SuiteConfig& config) {
  std::vector<VerificationReport> reports;
  for (double p : finite_p(config.p_list, 1.0, 2.0)) {
    double bound = std::pow(4.0, 2.0 - 2.0 / p);
    auto body = [&, p](int trial) -> TrialResult {
      TrialResult res;
      // same instances as the Stein suite
      auto gs = random_level_grids(sub_seed(config.seed, 31, trial), config.dim,
                                   config.grid_size, config.levels);
      GridFunction tsum = avg_apply(gs[0], DyadicLevel{0});
      for (int n = 1; n <= config.levels; ++n) {
        GridFunction t = avg_apply(gs[static_cast<std::size_t>(n)], DyadicLevel{n});
        for (std::size_t j = 0; j < tsum.values.size(); ++j)
          tsum.values[j] += t.values[j];
      }
      double denom = grid_lp_norm(grid_sum(gs), p);
      double ratio = denom > 0 ? grid_lp_norm(tsum, p) / denom : 0.0;
      res.ratios.push_back(ratio);
      if (p == 1.0 && std::abs(ratio - 1.0) > 1e-9)
        res.violations.push_back(
            {trial, ratio, hex_digest(sub_seed(config.seed, 31, trial)),
             "trace preservation failed at p = 1"});
      return res;
    };
    reports.push_back(run_trials("interpolation[p=" + std::to_string(p) + "]",
                                 config, bound, body));
  }
  return reports;
}

std::vector<VerificationReport> suite_theorem(const SuiteConfig& config) {
  std::vector<VerificationReport> reports;
  std::vector<double> ps;
  for (double p : config.p_list)
    if (!is_inf_exponent(p) && p >= 2.0) ps.push_back(p);
  for (double p : ps) {
    double bound = std::pow(4.0, 1.0 + 2.0 / p);
    auto body = [&, p](int trial) -> TrialResult {
      TrialResult res;
      std::uint64_t s = sub_seed(config.seed, 34, trial);
      const int d = config.dim, L = config.grid_size;
      GridFunction f = random_grid_function(s, d, L);
      GridFunction absf = abs_grid(f);
      std::vector<GridFunction> tabs;
      for (int n = 0; n <= config.levels; ++n)
        tabs.push_back(avg_apply(absf, DyadicLevel{n}));

      GridFunction F;
      F.values.reserve(static_cast<std::size_t>(L));
      for (int j = 0; j < L; ++j) {
        std::vector<HermitianOperator> cons;
        for (int n = 0; n <= config.levels; ++n)
          cons.push_back(hermitize(tabs[static_cast<std::size_t>(n)]
                                       .values[static_cast<std::size_t>(j)]));
        OperatorSequence seq = OperatorSequence::make(std::move(cons), true);
        DominantSolution sol = solve_dominant_general(seq, p, config.solver);
        if (!sol.converged) {
          res.skipped = true;
          return res;
        }
        for (const auto& x : seq.items)
          if (psd_check(sol.dominant - x).min_eig < -1e-6)
            res.violations.push_back({trial, 0.0, hex_digest(s),
                                      "dominant infeasible at a grid point"});
        F.values.push_back(sol.dominant.mat());
      }

      // window domination at sampled radii: W_r |f| <= 2 T_n |f| <= 2F
      for (int n = 1; n <= config.levels; ++n) {
        for (long r : {(1L << (n - 1)), (1L << n) - 1}) {
          if (r < (1L << (n - 1))) continue;
          GridFunction wavg = window_average(absf, r);
          for (int j = 0; j < L; ++j) {
            HermitianOperator w = hermitize(wavg.values[static_cast<std::size_t>(j)]);
            HermitianOperator t2 = hermitize(
                2.0 * tabs[static_cast<std::size_t>(n)].values[static_cast<std::size_t>(j)]);
            HermitianOperator f2 = hermitize(2.0 * F.values[static_cast<std::size_t>(j)]);
            if (!loewner_leq(w, t2, 1e-8) || !loewner_leq(w, f2, 1e-6)) {
              res.violations.push_back({trial, 0.0, hex_digest(s),
                                        "window domination failed"});
            }
          }
        }
      }

      double denom = grid_lp_norm(f, p);
      res.ratios.push_back(denom > 0 ? grid_lp_norm(F, p) / denom : 0.0);

      if (d == 1) {
        // scalar total order: F must be the pointwise maximum
        GridFunction pmax;
        pmax.values.reserve(static_cast<std::size_t>(L));
        for (int j = 0; j < L; ++j) {
          double m = 0.0;
          for (int n = 0; n <= config.levels; ++n)
            m = std::max(m, tabs[static_cast<std::size_t>(n)]
                                .values[static_cast<std::size_t>(j)](0, 0)
                                .real());
          GeneralOperator v(1, 1);
          v(0, 0) = m;
          pmax.values.push_back(v);
        }
        double ref = grid_lp_norm(pmax, p);
        double got = grid_lp_norm(F, p);
        if (std::abs(got - ref) > 1e-6 * (1.0 + ref))
          res.violations.push_back({trial, got / ref, hex_digest(s),
                                    "scalar pointwise-max oracle mismatch"});
      }
      return res;
    };
    reports.push_back(
        run_trials("theorem[p=" + std::to_string(p) + "]", config, bound, body));
  }
  return reports;
}

std::vector<VerificationReport> run_all(const SuiteConfig& config) {
  std::vector<VerificationReport> all;
  for (const auto& name : suite_names()) {
    auto batch = run_suite(name, config);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  return all;
}

std::vector<VerificationReport> run_suite(const std::string& name,
                                          const SuiteConfig& config) {
  if (name == "lemma21") return suite_lemma21(config);
  if (name == "duality") return suite_duality(config);
  if (name == "stein") return suite_stein(config);
  if (name == "cauchy_schwarz") return suite_cauchy_schwarz(config);
  if (name == "interpolation") return suite_interpolation(config);
  if (name == "theorem") return suite_theorem(config);
  if (name == "all") return run_all(config);
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<std::string> suite_names() {
  return {"lemma21", "duality", "stein", "cauchy_schwarz", "interpolation",
          "theorem"};
}

}  // namespace ncmax
