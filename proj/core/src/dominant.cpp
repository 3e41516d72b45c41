#include "ncmax/dominant.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ncmax {

namespace {

HermitianOperator clip_psd(const HermitianOperator& x) {
  SpectralDecomposition sd = spectral(x);
  Eigen::VectorXd lam = sd.eigenvalues.cwiseMax(0.0);
  return hermitize(sd.eigenvectors * lam.asDiagonal() * sd.eigenvectors.adjoint());
}

HermitianOperator sum_of(const OperatorSequence& seq) {
  GeneralOperator s = GeneralOperator::Zero(seq.dim(), seq.dim());
  for (const auto& x : seq.items) s += x.mat();
  return HermitianOperator::trusted(std::move(s));
}

double min_slack(const OperatorSequence& seq, const HermitianOperator& a) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& x : seq.items) m = std::min(m, psd_check(a - x).min_eig);
  return m;
}

// Shift a up the identity until a >= x_n for all n.
HermitianOperator make_feasible(const OperatorSequence& seq,
                                const HermitianOperator& a) {
  double m = min_slack(seq, a);
  if (m >= 0.0) return a;
  return a + HermitianOperator::identity(a.dim()) * (-m);
}

// Nearest point of the constraint intersection to z (Dykstra).
HermitianOperator project_intersection(const OperatorSequence& seq,
                                       const HermitianOperator& z,
                                       double tol_abs, int max_cycles = 200) {
  const std::size_t n = seq.size();
  if (n == 1) return project_cone(z, seq.items[0]);
  HermitianOperator a = z;
  std::vector<HermitianOperator> corr(n, HermitianOperator::zero(z.dim()));
  for (int c = 0; c < max_cycles; ++c) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      HermitianOperator t = a + corr[i];
      HermitianOperator y = project_cone(t, seq.items[i]);
      corr[i] = t - y;
      change += (y - a).mat().norm();
      a = y;
    }
    if (change <= tol_abs) break;
  }
  return make_feasible(seq, a);
}

double tr_pow(const HermitianOperator& a, double p) {
  SpectralDecomposition sd = spectral(a);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
    acc += std::pow(std::max(sd.eigenvalues(i), 0.0), p);
  return acc;
}

// d/da tr(a^p) = p a^{p-1}, with the spectral floor applied below the
// regularization threshold when p < 2.
HermitianOperator objective_gradient(const HermitianOperator& a, double p,
                                     double epsilon_reg) {
  const Eigen::Index d = a.dim();
  if (p == 1.0) return HermitianOperator::identity(d);
  SpectralDecomposition sd = spectral(a);
  double top = std::max(sd.eigenvalues(d - 1), 0.0);
  double floor = (p < 2.0) ? epsilon_reg * (1.0 + top) : 0.0;
  Eigen::VectorXd g(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double lam = std::max(sd.eigenvalues(i), floor);
    g(i) = p * std::pow(lam, p - 1.0);
  }
  return hermitize(sd.eigenvectors * g.asDiagonal() * sd.eigenvectors.adjoint());
}

struct DualCandidate {
  std::vector<HermitianOperator> y;
  double value = 0.0;
};

// Any positive sequence, rescaled so ||sum y_n||_q = 1, lower-bounds the
// primal value via weak duality; this keeps the best of several candidates.
class DualAccumulator {
 public:
  DualAccumulator(const OperatorSequence& seq, double q)
      : seq_(seq), q_(q), d_(seq.dim()) {
    best_.y.assign(seq.size(), HermitianOperator::zero(d_));
  }

  void consider(const std::vector<HermitianOperator>& zs) {
    GeneralOperator s = GeneralOperator::Zero(d_, d_);
    for (const auto& z : zs) s += z.mat();
    double nrm = schatten_norm(s, q_);
    if (nrm <= 0.0) return;
    double val = 0.0;
    for (std::size_t i = 0; i < seq_.size(); ++i)
      val += trace_pair(seq_.items[i].mat(), zs[i].mat()).real();
    val /= nrm;
    if (val > best_.value) {
      best_.value = val;
      best_.y.clear();
      for (const auto& z : zs) best_.y.push_back(z * (1.0 / nrm));
    }
  }

  DualCandidate take() { return std::move(best_); }

 private:
  const OperatorSequence& seq_;
  double q_;
  Eigen::Index d_;
  DualCandidate best_;
};

// Splits the optimality direction G ~ a^{p-1} into PSD pieces supported on
// the active subspaces of the constraints.
void active_split_candidates(const OperatorSequence& seq,
                             const HermitianOperator& a, double p,
                             DualAccumulator& acc) {
  const Eigen::Index d = a.dim();
  const std::size_t n = seq.size();
  HermitianOperator G = p > 1.0 ? matrix_power(a, p - 1.0)
                                : HermitianOperator::identity(d);
  double scale = 1.0 + schatten_norm(a.mat(), kPInf);

  // All mass on a single constraint.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<HermitianOperator> zs(n, HermitianOperator::zero(d));
    zs[i] = G;
    acc.consider(zs);
  }

  std::vector<SpectralDecomposition> slack(n);
  for (std::size_t i = 0; i < n; ++i) slack[i] = spectral(a - seq.items[i]);

  for (double act_rel : {1e-12, 1e-9, 1e-6}) {
    double act = act_rel * scale;
    std::vector<GeneralOperator> proj(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      GeneralOperator pmat = GeneralOperator::Zero(d, d);
      for (Eigen::Index k = 0; k < d; ++k)
        if (slack[i].eigenvalues(k) <= act) {
          auto v = slack[i].eigenvectors.col(k);
          pmat += v * v.adjoint();
          any = true;
        }
      proj[i] = pmat;
    }
    if (!any) continue;
    // cyclic refinement pushing sum_i Z_i towards G
    std::vector<HermitianOperator> zs(n, HermitianOperator::zero(d));
    for (int sweep = 0; sweep < 40; ++sweep) {
      double change = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        GeneralOperator r = G.mat();
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) r -= zs[j].mat();
        HermitianOperator znew = clip_psd(hermitize(proj[i] * r * proj[i]));
        change += (znew - zs[i]).mat().norm();
        zs[i] = znew;
      }
      if (change <= 1e-14 * scale) break;
    }
    acc.consider(zs);
  }
}

DominantSolution finalize(const OperatorSequence& seq, HermitianOperator a,
                          double p, int iterations, double tol,
                          const std::vector<HermitianOperator>* extra_dual = nullptr) {
  a = make_feasible(seq, a);
  // The sum of the constraints is always feasible; keep it when the iterate
  // hasn't beaten it, so values never exceed this a priori upper bound.
  HermitianOperator xsum = sum_of(seq);
  if (tr_pow(xsum, p) < tr_pow(a, p)) a = std::move(xsum);
  DominantSolution sol{std::move(a)};
  sol.primal_value = std::pow(tr_pow(sol.dominant, p), 1.0 / p);
  DualAccumulator acc(seq, conjugate_exponent(p));
  if (extra_dual) acc.consider(*extra_dual);
  active_split_candidates(seq, sol.dominant, p, acc);
  DualCandidate dc = acc.take();
  sol.dual_value = std::min(dc.value, sol.primal_value);  // weak duality holds
                                                          // exactly; guard roundoff
  sol.dual_sequence = OperatorSequence::make(std::move(dc.y), true);
  sol.gap = sol.primal_value - sol.dual_value;
  sol.iterations = iterations;
  sol.converged = sol.gap <= tol * (1.0 + sol.primal_value);
  return sol;
}

// --- interior-point route -------------------------------------------------
//
// Minimizes tr(a^p) - mu * sum_n log det(a - x_n) by Newton's method over
// the real coordinates of Hermitian a, following the central path mu -> 0.
// The path multipliers mu (a - x_n)^{-1} are exactly PSD and become the dual
// certificate, with complementarity slack mu*d per constraint.

struct HermBasis {
  // orthonormal basis of d x d Hermitian matrices under Re tr(A B)
  std::vector<GeneralOperator> mats;

  explicit HermBasis(Eigen::Index d) {
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
      GeneralOperator e = GeneralOperator::Zero(d, d);
      e(i, i) = 1.0;
      mats.push_back(e);
    }
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i + 1; j < d; ++j) {
        GeneralOperator e = GeneralOperator::Zero(d, d);
        e(i, j) = s;
        e(j, i) = s;
        mats.push_back(e);
        GeneralOperator o = GeneralOperator::Zero(d, d);
        o(i, j) = Complex(0, s);
        o(j, i) = Complex(0, -s);
        mats.push_back(o);
      }
  }

  std::size_t size() const { return mats.size(); }
};

// Frechet derivative of lambda -> lambda^{p-1} at a (divided differences).
GeneralOperator dpow(const SpectralDecomposition& sd, double expnt,
                     const GeneralOperator& h, double floor) {
  const Eigen::Index d = sd.eigenvalues.size();
  GeneralOperator ht = sd.eigenvectors.adjoint() * h * sd.eigenvectors;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      double li = std::max(sd.eigenvalues(i), floor);
      double lj = std::max(sd.eigenvalues(j), floor);
      double phi;
      if (std::abs(li - lj) > 1e-10 * (li + lj))
        phi = (std::pow(li, expnt) - std::pow(lj, expnt)) / (li - lj);
      else
        phi = expnt * std::pow(0.5 * (li + lj), expnt - 1.0);
      ht(i, j) *= phi;
    }
  return sd.eigenvectors * ht * sd.eigenvectors.adjoint();
}

DominantSolution solve_dominant_barrier(const OperatorSequence& seq, double p,
                                        const SolverConfig& config) {
  const Eigen::Index d = seq.dim();
  const std::size_t n = seq.size();
  const HermBasis basis(d);
  const std::size_t m = basis.size();

  HermitianOperator xsum = sum_of(seq);
  double scale = schatten_norm(xsum.mat(), kPInf);
  if (scale <= 0.0) return finalize(seq, xsum, p, 0, config.tol);

  // strictly feasible start
  HermitianOperator a = xsum + HermitianOperator::identity(d) * (0.1 * scale);
  double fscale = tr_pow(a, p);
  double mu = 0.1 * fscale / static_cast<double>(n * d);
  // Stopping mu: path gap is ~ mu*n*d / (p * tr(a^p)^{1/q}); aim well below
  // the requested gap tolerance. This is only an estimate — the loop below
  // keeps shrinking mu until the certified gap actually meets the tolerance.
  double mu_final =
      0.02 * config.tol * (1.0 + std::pow(fscale, 1.0 / p)) *
      std::max(p * std::pow(fscale, 1.0 - 1.0 / p), 1e-300) /
      static_cast<double>(n * d);
  const double mu_floor = mu_final * 1e-6;
  const double pow_floor = config.epsilon_reg * (1.0 + scale);

  auto slacks_of = [&](const HermitianOperator& cand,
                       std::vector<HermitianOperator>& out) -> double {
    double worst = std::numeric_limits<double>::infinity();
    out.clear();
    for (const auto& x : seq.items) {
      out.push_back(cand - x);
      worst = std::min(worst, psd_check(out.back()).min_eig);
    }
    return worst;
  };

  std::vector<HermitianOperator> slacks;
  slacks_of(a, slacks);

  auto barrier_value = [&](const HermitianOperator& cand, double mu_cur,
                           std::vector<HermitianOperator>& sl) -> double {
    double worst = slacks_of(cand, sl);
    if (worst <= 0.0) return std::numeric_limits<double>::infinity();
    double val = tr_pow(cand, p);
    for (const auto& s : sl) {
      SpectralDecomposition sd = spectral(s);
      for (Eigen::Index i = 0; i < d; ++i)
        val -= mu_cur * std::log(sd.eigenvalues(i));
    }
    return val;
  };

  int it = 0;
  Eigen::VectorXd grad(m);
  Eigen::MatrixXd hess(m, m);
  while (true) {
    // Newton iterations at the current mu
    for (int newton = 0; newton < 60 && it < config.max_iter; ++newton, ++it) {
      SpectralDecomposition sda = spectral(a);
      HermitianOperator gmat = objective_gradient(a, p, config.epsilon_reg);
      std::vector<GeneralOperator> sinv(n);
      for (std::size_t i = 0; i < n; ++i) {
        SpectralDecomposition sd = spectral(slacks[i]);
        Eigen::VectorXd inv = sd.eigenvalues.cwiseMax(1e-300).cwiseInverse();
        sinv[i] = sd.eigenvectors * inv.asDiagonal() * sd.eigenvectors.adjoint();
      }
      GeneralOperator gtot = gmat.mat();
      for (std::size_t i = 0; i < n; ++i) gtot -= mu * sinv[i];

      for (std::size_t r = 0; r < m; ++r)
        grad(static_cast<Eigen::Index>(r)) =
            trace_pair(gtot, basis.mats[r]).real();

      // Hessian: p * Dpow(a, p-1)[H] plus mu * S^{-1} H S^{-1} terms
      std::vector<GeneralOperator> hcols(m);
      for (std::size_t r = 0; r < m; ++r) {
        GeneralOperator h = basis.mats[r];
        GeneralOperator col = p * dpow(sda, p - 1.0, h, pow_floor);
        for (std::size_t i = 0; i < n; ++i)
          col += mu * (sinv[i] * h * sinv[i]);
        hcols[r] = col;
      }
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = r; c < m; ++c) {
          double v = trace_pair(hcols[r], basis.mats[c]).real();
          hess(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
          hess(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r)) = v;
        }

      Eigen::VectorXd step = hess.ldlt().solve(-grad);
      double decrement = -0.5 * grad.dot(step);
      if (!std::isfinite(decrement) || decrement <= 0) break;

      GeneralOperator dir = GeneralOperator::Zero(d, d);
      for (std::size_t r = 0; r < m; ++r)
        dir += step(static_cast<Eigen::Index>(r)) * basis.mats[r];
      HermitianOperator hdir = hermitize(dir);

      // backtracking to stay strictly feasible and decrease
      double cur = barrier_value(a, mu, slacks);
      double t = 1.0;
      bool accepted = false;
      std::vector<HermitianOperator> trial_slacks;
      for (int bt = 0; bt < 50; ++bt) {
        HermitianOperator trial = a + hdir * t;
        double val = barrier_value(trial, mu, trial_slacks);
        if (val < cur - 1e-14 * (1.0 + std::abs(cur))) {
          a = trial;
          slacks = trial_slacks;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;
      if (decrement <= 1e-14 * (1.0 + std::abs(cur))) break;
    }
    if (mu <= mu_final || it >= config.max_iter) {
      // Central-path multipliers as the dual certificate.
      std::vector<HermitianOperator> path_dual;
      path_dual.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        SpectralDecomposition sd = spectral(slacks[i]);
        Eigen::VectorXd inv = sd.eigenvalues.cwiseMax(1e-300).cwiseInverse() * mu;
        path_dual.push_back(hermitize(sd.eigenvectors * inv.asDiagonal() *
                                      sd.eigenvectors.adjoint()));
      }
      DominantSolution sol = finalize(seq, a, p, it, config.tol, &path_dual);
      if (sol.converged || it >= config.max_iter || mu_final <= mu_floor)
        return sol;
      mu_final *= 0.1;  // estimate was optimistic; push further down the path
    }
    mu = std::max(mu * 0.1, mu_final);
  }
}

// --- projected gradient route ---------------------------------------------

DominantSolution solve_dominant_pg(const OperatorSequence& seq, double p,
                                   const SolverConfig& config) {
  HermitianOperator a0 = sum_of(seq);  // always feasible
  double scale = 1.0 + schatten_norm(a0.mat(), kPInf);
  if (scale - 1.0 <= 0.0) return finalize(seq, a0, p, 0, config.tol);
  const double inner_tol = 1e-13 * scale;

  HermitianOperator a = make_feasible(seq, a0);
  double f = tr_pow(a, p);
  double step = 1.0 / (p * std::pow(scale, p - 1.0));
  int it = 0;
  int next_check = 32;
  for (; it < config.max_iter; ++it) {
    HermitianOperator g = objective_gradient(a, p, config.epsilon_reg);
    double t = config.backtracking ? std::min(step * 2.0, 1e6 / scale) : step;
    double f_prev = f;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      HermitianOperator trial = project_intersection(seq, a - g * t, inner_tol);
      double f_trial = tr_pow(trial, p);
      if (f_trial < f - 1e-15 * (1.0 + f)) {
        moved = (trial - a).mat().norm() > 1e-15 * scale;
        a = trial;
        f = f_trial;
        step = t;
        break;
      }
      t *= 0.5;
      if (!config.backtracking) break;
    }
    if (!moved) {
      DominantSolution sol = finalize(seq, a, p, it + 1, config.tol);
      if (sol.converged || step <= 1e-12 / scale) return sol;
      step *= 0.25;
      continue;
    }
    if (it + 1 >= next_check || f_prev - f <= 1e-15 * (1.0 + f)) {
      next_check = (it + 1) * 2;
      DominantSolution sol = finalize(seq, a, p, it + 1, config.tol);
      if (sol.converged) return sol;
    }
  }
  return finalize(seq, a, p, it, config.tol);
}

}  // namespace

DominantSolution solve_dominant_inf(const OperatorSequence& seq) {
  if (seq.items.empty())
    throw std::invalid_argument("solve_dominant_inf: empty sequence");
  if (!seq.positive_flag)
    throw std::invalid_argument("solve_dominant_inf: sequence is not flagged positive");
  const Eigen::Index d = seq.dim();
  double top = 0.0;
  std::size_t top_idx = 0;
  Eigen::VectorXcd top_vec = Eigen::VectorXcd::Zero(d);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    SpectralDecomposition sd = spectral(seq.items[i]);
    double lam = sd.eigenvalues(d - 1);
    if (lam > top) {
      top = lam;
      top_idx = i;
      top_vec = sd.eigenvectors.col(d - 1);
    }
  }
  DominantSolution sol{HermitianOperator::identity(d) * top};
  sol.primal_value = top;
  // Rank-one dual certificate at the maximizing constraint: unit 1-norm and
  // pairing equal to the top eigenvalue, so the gap is zero.
  std::vector<HermitianOperator> y(seq.size(), HermitianOperator::zero(d));
  if (top > 0.0) y[top_idx] = hermitize(top_vec * top_vec.adjoint());
  sol.dual_sequence = OperatorSequence::make(std::move(y), true);
  sol.dual_value = top > 0.0 ? pairing(seq, sol.dual_sequence) : 0.0;
  sol.dual_value = std::min(sol.dual_value, sol.primal_value);
  sol.gap = sol.primal_value - sol.dual_value;
  sol.converged = true;
  sol.iterations = 0;
  return sol;
}

HermitianOperator project_cone(const HermitianOperator& a,
                               const HermitianOperator& x) {
  if (a.dim() != x.dim())
    throw std::invalid_argument("project_cone: dimension mismatch");
  return x + clip_psd(a - x);
}

DominantSolution solve_dominant_p2(const OperatorSequence& seq,
                                   const SolverConfig& config) {
  if (seq.items.empty())
    throw std::invalid_argument("solve_dominant_p2: empty sequence");
  if (!seq.positive_flag)
    throw std::invalid_argument("solve_dominant_p2: sequence is not flagged positive");
  const Eigen::Index d = seq.dim();
  const std::size_t n = seq.size();
  double scale = 1.0 + sum_of(seq).mat().norm();

  // Dykstra projecting the origin: the nearest feasible point to 0 is the
  // Frobenius-norm minimizer, i.e. the Schatten-2 optimum.
  HermitianOperator a = HermitianOperator::zero(d);
  std::vector<HermitianOperator> corr(n, HermitianOperator::zero(d));
  int it = 0;
  for (; it < config.max_iter; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      HermitianOperator t = a + corr[i];
      HermitianOperator y = project_cone(t, seq.items[i]);
      corr[i] = t - y;
      change += (y - a).mat().norm();
      a = y;
    }
    if (change <= 1e-14 * scale) break;
  }
  // Dykstra corrections are (minus) the KKT multipliers; offer them as a
  // dual candidate alongside the generic recovery.
  std::vector<HermitianOperator> dyk;
  dyk.reserve(n);
  for (std::size_t i = 0; i < n; ++i) dyk.push_back(clip_psd(corr[i] * -1.0));
  return finalize(seq, a, 2.0, it, config.tol, &dyk);
}

DominantSolution solve_dominant_general(const OperatorSequence& seq, double p,
                                        const SolverConfig& config) {
  if (seq.items.empty())
    throw std::invalid_argument("solve_dominant_general: empty sequence");
  if (!seq.positive_flag)
    throw std::invalid_argument("solve_dominant_general: sequence is not flagged positive");
  if (is_inf_exponent(p)) return solve_dominant_inf(seq);
  if (p < 1.0) throw std::invalid_argument("solve_dominant_general: p < 1");

  SolveMethod m = config.method;
  if (m == SolveMethod::auto_select) {
    if (p == 2.0) {
      // Dykstra is usually fastest at p = 2 but can stall on near-degenerate
      // instances; fall back to the barrier when it fails to certify.
      DominantSolution sol = solve_dominant_p2(seq, config);
      if (sol.converged) return sol;
      DominantSolution alt = solve_dominant_barrier(seq, p, config);
      return alt.gap < sol.gap ? alt : sol;
    }
    m = SolveMethod::barrier;
  }
  switch (m) {
    case SolveMethod::closed_form_inf:
      return solve_dominant_inf(seq);
    case SolveMethod::dykstra_p2:
      if (p != 2.0)
        throw std::invalid_argument("solve_dominant_p2: method requires p = 2");
      return solve_dominant_p2(seq, config);
    case SolveMethod::projected_gradient:
      return solve_dominant_pg(seq, p, config);
    case SolveMethod::barrier:
    default:
      return solve_dominant_barrier(seq, p, config);
  }
}

double brute_force_oracle(const OperatorSequence& seq, double p,
                          double resolution) {
  if (seq.dim() != 2)
    throw std::invalid_argument("brute_force_oracle: dim must be 2");
  if (seq.size() == 0 || seq.size() > 3)
    throw std::invalid_argument("brute_force_oracle: length must be 1..3");
  if (resolution <= 0.0)
    throw std::invalid_argument("brute_force_oracle: resolution must be positive");

  HermitianOperator s = sum_of(seq);
  double bound = std::max(schatten_norm(s.mat(), kPInf),
                          is_inf_exponent(p) ? 0.0 : schatten_norm(s.mat(), p));
  if (bound <= 0.0) return 0.0;
  const double feas_tol = 1e-10 * (1.0 + bound);

  auto assemble = [](const Eigen::Vector4d& pt) {
    GeneralOperator m(2, 2);
    m(0, 0) = pt(0);
    m(1, 1) = pt(1);
    m(0, 1) = Complex(pt(2), pt(3));
    m(1, 0) = Complex(pt(2), -pt(3));
    return HermitianOperator::trusted(std::move(m));
  };
  // Any trial point is repaired onto the feasible set by shifting up the
  // identity until a >= x_n holds, so the search is effectively
  // unconstrained: every parameter vector evaluates to a feasible value, and
  // the true optimum is a fixed point of the repair.
  auto repair = [&](Eigen::Vector4d& pt) {
    HermitianOperator a = assemble(pt);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : seq.items) m = std::min(m, psd_check(a - x).min_eig);
    if (m < -feas_tol) {
      pt(0) -= m;
      pt(1) -= m;
      a = assemble(pt);
    }
    return a;
  };
  auto value_at = [&](Eigen::Vector4d& pt) {
    return schatten_norm(repair(pt).mat(), p);
  };

  // Coarse grid over [0,B]^2 x [-B,B]^2.
  const int ng = 13;
  Eigen::Vector4d bestpt(s.mat()(0, 0).real(), s.mat()(1, 1).real(),
                         s.mat()(0, 1).real(), s.mat()(0, 1).imag());
  double bestval = value_at(bestpt);
  for (int iu = 0; iu <= ng; ++iu)
    for (int itd = 0; itd <= ng; ++itd)
      for (int iw = 0; iw <= ng; ++iw)
        for (int iv = 0; iv <= ng; ++iv) {
          Eigen::Vector4d pt(bound * iu / ng, bound * itd / ng,
                             bound * (2.0 * iw / ng - 1.0),
                             bound * (2.0 * iv / ng - 1.0));
          double val = value_at(pt);
          if (val < bestval) {
            bestval = val;
            bestpt = pt;
          }
        }

  // Pattern search refinement: axis moves plus seeded random directions.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto try_point = [&](Eigen::Vector4d pt) -> bool {
    double val = value_at(pt);
    if (val < bestval - 1e-15 * (1.0 + bestval)) {
      bestval = val;
      bestpt = pt;
      return true;
    }
    return false;
  };
  // A successful direction is followed while it keeps improving, which lets
  // the search travel along the curved valleys this objective produces.
  auto slide = [&](const Eigen::Vector4d& dir) -> bool {
    if (!try_point(bestpt + dir)) return false;
    for (int k = 0; k < 4000 && try_point(bestpt + dir); ++k) {
    }
    return true;
  };
  double h = bound / ng;
  while (h >= resolution * 0.25) {
    bool improved = false;
    for (int k = 0; k < 4; ++k) {
      Eigen::Vector4d e = Eigen::Vector4d::Zero();
      e(k) = h;
      improved = slide(e) || improved;
      improved = slide(-e) || improved;
    }
    for (int k = 0; k < 24; ++k) {
      Eigen::Vector4d r(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
      improved = slide(h * r.normalized()) || improved;
    }
    if (!improved) h *= 0.5;
  }
  return bestval;
}

}  // namespace ncmax
