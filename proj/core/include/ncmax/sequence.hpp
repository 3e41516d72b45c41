#pragma once

// Vector-valued norms on finite tuples of Hermitian matrices: the positive
// l_infinity norm (least dominating operator), the positive l_1 norm (norm
// of the sum), factorization upper bounds, and the duality pairing.

#include "ncmax/operator.hpp"

#include <optional>
#include <vector>

namespace ncmax {

struct SolverConfig;  // dominant.hpp

struct OperatorSequence {
  std::vector<HermitianOperator> items;
  bool positive_flag = false;

  Eigen::Index dim() const { return items.empty() ? 0 : items.front().dim(); }
  std::size_t size() const { return items.size(); }

  // Throws unless all items share a dimension and, when positive_flag is
  // requested, every item is PSD at tolerance 1e-9.
  static OperatorSequence make(std::vector<HermitianOperator> items,
                               bool positive_flag);
};

// x_n = a z_n b with sup_n ||z_n|| <= 1; any concrete factorization gives an
// upper bound on the L_p(l_inf) norm.
struct Factorization {
  GeneralOperator left;
  std::vector<GeneralOperator> middles;
  GeneralOperator right;
};

// x_n = a_n b_n; gives an upper bound on the L_p(l_1) norm.
struct L1Factorization {
  std::vector<GeneralOperator> lefts;
  std::vector<GeneralOperator> rights;
};

struct NormResult {
  double value = 0.0;
  std::optional<HermitianOperator> certificate;  // dominant, when available
  double lower_bound = 0.0;
  double gap = 0.0;
  bool converged = true;
};

// || sum_n x_n ||_p for a positive sequence.
double l1_pos_norm(const OperatorSequence& seq, double p);

// inf{ ||a||_p : a >= x_n for all n } with a dual lower bound; delegates to
// the dominant solver (closed form at p = inf).
NormResult linf_pos_norm(const OperatorSequence& seq, double p);
NormResult linf_pos_norm(const OperatorSequence& seq, double p,
                         const SolverConfig& config);

// ||a||_{2p} * sup_n ||z_n||_inf * ||b||_{2p}.
double factorization_value(const Factorization& fac, double p);

// || (sum a_j a_j*)^{1/2} ||_{2p} * || (sum b_j* b_j)^{1/2} ||_{2p}.
double l1_factorization_value(const L1Factorization& fac, double p);

// From a dominant a >= x_n, the factorization x_n = a^{1/2} z_n a^{1/2} with
// z_n = (P + a^{1/2})^{-1} x_n (P + a^{1/2})^{-1}, P the kernel projection
// of a. Each z_n is a PSD contraction.
Factorization factorize_from_dominant(const OperatorSequence& seq,
                                      const HermitianOperator& a);

// 2(a*a + b b*): dominates every Hermitian a z_n b when the z_n are
// contractions.
HermitianOperator dominant_from_factorization(const Factorization& fac);

// The constant sequence x_n = (sum_k y_k)^{p-1}, the extremal element of the
// dual unit ball; requires 1 < p < inf.
OperatorSequence dual_witness_linf(const OperatorSequence& yseq, double p);

// sum_j Re tr(x_j y_j); shorter sequence zero-padded.
double pairing(const OperatorSequence& xseq, const OperatorSequence& yseq);

struct SamplerConfig {
  std::uint64_t seed = 0;
  int samples = 200;
};

// Sampled positive dual lower bound on the L_p(l_inf^+) norm: max over
// sampled y with ||sum y_n||_q = 1 of pairing(x, y).
double duality_lower_bound(const OperatorSequence& xseq, double p,
                           const SamplerConfig& config = {});

}  // namespace ncmax
