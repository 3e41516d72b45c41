#include "ncmax/sequence.hpp"

#include "ncmax/dominant.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ncmax {

namespace {

double op_norm(const GeneralOperator& m) { return schatten_norm(m, kPInf); }

// 2p with the inf sentinel passed through.
double double_exponent(double p) { return is_inf_exponent(p) ? kPInf : 2.0 * p; }

}  // namespace

OperatorSequence OperatorSequence::make(std::vector<HermitianOperator> items,
                                        bool positive_flag) {
  if (!items.empty()) {
    Eigen::Index d = items.front().dim();
    for (const auto& it : items)
      if (it.dim() != d)
        throw std::invalid_argument("OperatorSequence: mixed dimensions");
    if (positive_flag) {
      for (const auto& it : items) {
        double tol = 1e-9 * (1.0 + op_norm(it.mat()));
        if (!psd_check(it, tol).is_psd)
          throw std::invalid_argument("OperatorSequence: non-positive item under positive flag");
      }
    }
  }
  OperatorSequence s;
  s.items = std::move(items);
  s.positive_flag = positive_flag;
  return s;
}

double l1_pos_norm(const OperatorSequence& seq, double p) {
  if (!seq.positive_flag)
    throw std::invalid_argument("l1_pos_norm: sequence is not flagged positive");
  if (seq.items.empty()) return 0.0;
  GeneralOperator sum = GeneralOperator::Zero(seq.dim(), seq.dim());
  for (const auto& it : seq.items) sum += it.mat();
  return schatten_norm(sum, p);
}

NormResult linf_pos_norm(const OperatorSequence& seq, double p) {
  return linf_pos_norm(seq, p, SolverConfig{});
}

NormResult linf_pos_norm(const OperatorSequence& seq, double p,
                         const SolverConfig& config) {
  DominantSolution sol = is_inf_exponent(p)
                             ? solve_dominant_inf(seq)
                             : solve_dominant_general(seq, p, config);
  NormResult r;
  r.value = sol.primal_value;
  r.certificate = sol.dominant;
  r.lower_bound = sol.dual_value;
  r.gap = sol.gap;
  r.converged = sol.converged;
  return r;
}

double factorization_value(const Factorization& fac, double p) {
  double zsup = 0.0;
  for (const auto& z : fac.middles) zsup = std::max(zsup, op_norm(z));
  double pp = double_exponent(p);
  return schatten_norm(fac.left, pp) * zsup * schatten_norm(fac.right, pp);
}

double l1_factorization_value(const L1Factorization& fac, double p) {
  if (fac.lefts.size() != fac.rights.size())
    throw std::invalid_argument("l1_factorization_value: mismatched factor counts");
  if (fac.lefts.empty()) return 0.0;
  Eigen::Index d = fac.lefts.front().rows();
  GeneralOperator saa = GeneralOperator::Zero(d, d);
  GeneralOperator sbb = GeneralOperator::Zero(d, d);
  for (std::size_t j = 0; j < fac.lefts.size(); ++j) {
    saa += fac.lefts[j] * fac.lefts[j].adjoint();
    sbb += fac.rights[j].adjoint() * fac.rights[j];
  }
  double pp = double_exponent(p);
  return schatten_norm(matrix_power(hermitize(saa), 0.5).mat(), pp) *
         schatten_norm(matrix_power(hermitize(sbb), 0.5).mat(), pp);
}

Factorization factorize_from_dominant(const OperatorSequence& seq,
                                      const HermitianOperator& a) {
  double tol = 1e-7 * (1.0 + op_norm(a.mat()));
  for (const auto& x : seq.items)
    if (!loewner_leq(x, a, tol))
      throw std::invalid_argument("factorize_from_dominant: dominant does not cover the sequence");

  SpectralDecomposition sd = spectral(a);
  const Eigen::Index d = a.dim();
  double top = sd.eigenvalues.size() ? std::abs(sd.eigenvalues(d - 1)) : 0.0;
  double kernel_cut = 1e-10 * top;
  // (P_ker + a^{1/2})^{-1}, diagonal in the eigenbasis of a.
  Eigen::VectorXd sqrt_diag(d), inv_diag(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double lam = std::max(sd.eigenvalues(i), 0.0);
    if (lam <= kernel_cut) {
      sqrt_diag(i) = 0.0;
      inv_diag(i) = 1.0;  // kernel projection contributes the 1
    } else {
      sqrt_diag(i) = std::sqrt(lam);
      inv_diag(i) = 1.0 / sqrt_diag(i);
    }
  }
  GeneralOperator root = sd.eigenvectors * sqrt_diag.asDiagonal() *
                         sd.eigenvectors.adjoint();
  GeneralOperator inv = sd.eigenvectors * inv_diag.asDiagonal() *
                        sd.eigenvectors.adjoint();

  Factorization fac;
  fac.left = root;
  fac.right = root;
  fac.middles.reserve(seq.size());
  for (const auto& x : seq.items)
    fac.middles.push_back(hermitize(inv * x.mat() * inv).mat());
  return fac;
}

HermitianOperator dominant_from_factorization(const Factorization& fac) {
  for (const auto& z : fac.middles)
    if (op_norm(z) > 1.0 + 1e-9)
      throw std::invalid_argument("dominant_from_factorization: middles are not contractions");
  // For contractions z: herm(a z b) <= (a z a* + b* z b)/2 <= (a a* + b* b)/2
  // from (a* - b)* z (a* - b) >= 0 and its i^k-phased variants; the factor 2
  // absorbs the four-term positive-contraction split of a general z.
  GeneralOperator m = 2.0 * (fac.left * fac.left.adjoint() +
                             fac.right.adjoint() * fac.right);
  return hermitize(m);
}

OperatorSequence dual_witness_linf(const OperatorSequence& yseq, double p) {
  if (is_inf_exponent(p) || p <= 1.0)
    throw std::invalid_argument("dual_witness_linf: requires 1 < p < inf");
  if (!yseq.positive_flag)
    throw std::invalid_argument("dual_witness_linf: sequence is not flagged positive");
  if (yseq.items.empty())
    throw std::invalid_argument("dual_witness_linf: empty sequence");
  GeneralOperator sum = GeneralOperator::Zero(yseq.dim(), yseq.dim());
  for (const auto& it : yseq.items) sum += it.mat();
  HermitianOperator w = matrix_power(hermitize(sum), p - 1.0);
  std::vector<HermitianOperator> items(yseq.size(), w);
  return OperatorSequence::make(std::move(items), true);
}

double pairing(const OperatorSequence& xseq, const OperatorSequence& yseq) {
  std::size_t n = std::min(xseq.size(), yseq.size());
  if (n > 0 && xseq.dim() != yseq.dim())
    throw std::invalid_argument("pairing: dimension mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    acc += trace_pair(xseq.items[j].mat(), yseq.items[j].mat()).real();
  return acc;  // zero-padding: indices past the shorter sequence contribute 0
}

double duality_lower_bound(const OperatorSequence& xseq, double p,
                           const SamplerConfig& config) {
  if (is_inf_exponent(p) || p < 1.0)
    throw std::invalid_argument("duality_lower_bound: requires 1 <= p < inf");
  if (xseq.items.empty()) return 0.0;
  const double q = conjugate_exponent(p);
  const Eigen::Index d = xseq.dim();
  const std::size_t n = xseq.size();

  auto score = [&](std::vector<HermitianOperator> cand) -> double {
    OperatorSequence y = OperatorSequence::make(std::move(cand), true);
    double nrm = l1_pos_norm(y, q);
    if (nrm <= 0.0) return 0.0;
    return pairing(xseq, y) / nrm;
  };

  double best = 0.0;

  // Solver dual certificate.
  DominantSolution sol = solve_dominant_general(xseq, p);
  if (!sol.dual_sequence.items.empty())
    best = std::max(best, score(sol.dual_sequence.items));

  // Gradient-type witnesses: all mass on one index.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<HermitianOperator> cand(n, HermitianOperator::zero(d));
    cand[j] = p > 1.0 ? matrix_power(xseq.items[j], p - 1.0)
                      : HermitianOperator::identity(d);
    if (schatten_norm(cand[j].mat(), q) > 0) best = std::max(best, score(cand));
  }

  // Wishart-type random positives.
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < config.samples; ++s) {
    std::vector<HermitianOperator> cand;
    cand.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      GeneralOperator g(d, d);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
          g(r, c) = Complex(gauss(rng), gauss(rng));
      cand.push_back(hermitize(g.adjoint() * g));
    }
    best = std::max(best, score(std::move(cand)));
  }
  return best;
}

}  // namespace ncmax
