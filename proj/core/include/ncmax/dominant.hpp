#pragma once

// Convex minimization of the Schatten p-norm over the intersection of
// shifted PSD cones { a : a >= x_n }. Closed form at p = inf, Dykstra
// projections at p = 2, a log-det barrier path-following method for general
// p (with a projected-gradient alternative), plus a grid-search oracle for
// 2x2 instances.

#include "ncmax/sequence.hpp"

#include <cstdint>

namespace ncmax {

enum class SolveMethod {
  closed_form_inf,
  dykstra_p2,
  projected_gradient,
  barrier,
  auto_select,
};

struct SolverConfig {
  double tol = 1e-7;        // primal-dual gap target, relative
  int max_iter = 20000;
  bool backtracking = true; // else fixed step
  double epsilon_reg = 1e-9;  // spectral floor for 1 < p < 2 gradients
  SolveMethod method = SolveMethod::auto_select;
};

struct DominantSolution {
  HermitianOperator dominant;
  double primal_value = 0.0;
  OperatorSequence dual_sequence;  // positive, ||sum y_n||_q <= 1
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// p = inf closed form: (max_n lambda_max(x_n)) * I.
DominantSolution solve_dominant_inf(const OperatorSequence& seq);

// Frobenius-nearest point of { m : m >= x } to a, i.e. x + clip_PSD(a - x).
HermitianOperator project_cone(const HermitianOperator& a,
                               const HermitianOperator& x);

// Minimizer of ||a||_2 over the constraint intersection (Dykstra).
DominantSolution solve_dominant_p2(const OperatorSequence& seq,
                                   const SolverConfig& config = {});

// General 1 <= p < inf; dispatches to the closed form / Dykstra routes when
// method is auto_select and p warrants it.
DominantSolution solve_dominant_general(const OperatorSequence& seq, double p,
                                        const SolverConfig& config = {});

// Exhaustive grid search over Hermitian 2x2 dominants (4 real parameters,
// box bounded by ||sum x_n||_inf) with coordinate refinement down to
// `resolution`. Independent of the iterative solvers; dim must be 2 and the
// sequence length at most 3.
double brute_force_oracle(const OperatorSequence& seq, double p,
                          double resolution);

}  // namespace ncmax
