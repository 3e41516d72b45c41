#pragma once

// Matrix-valued functions on a periodic unit-spaced grid and the dyadic
// averaging operators T_n (uniform window of radius 2^n), together with
// their scalar kernel calculus.

#include "ncmax/operator.hpp"

#include <vector>

namespace ncmax {

struct GridFunction {
  std::vector<GeneralOperator> values;  // length L, periodic

  Eigen::Index grid_size() const { return static_cast<Eigen::Index>(values.size()); }
  Eigen::Index dim() const { return values.empty() ? 0 : values.front().rows(); }

  static GridFunction make(std::vector<GeneralOperator> values);
};

// Level n: uniform window of radius 2^n, weight 1/(2^{n+1}+1). The window
// must fit the circle without self-overlap: 2*radius + 1 <= L.
struct DyadicLevel {
  int n;
  long radius() const { return 1L << n; }
  double weight() const { return 1.0 / (2.0 * static_cast<double>(radius()) + 1.0); }
};

// (T_n f)(j) = weight * sum_{|i| <= 2^n} f(j+i mod L).
GridFunction avg_apply(const GridFunction& f, const DyadicLevel& level);

// Uniform average of arbitrary integer radius r >= 1, weight 1/(2r+1).
GridFunction window_average(const GridFunction& f, long r);

// Pointwise |f|.
GridFunction abs_grid(const GridFunction& f);

// (sum_j tr|f(j)|^p)^{1/p}; p = inf gives max_j ||f(j)||_inf.
double grid_lp_norm(const GridFunction& f, double p);

// Box kernel of T_n on the integer line, indexed by offset -radius..radius.
// Nonnegative, sums to 1.
std::vector<double> kernel_of(const DyadicLevel& level);

// Circular-free convolution of the two box kernels: the kernel of T_n T_m,
// support radius 2^n + 2^m.
std::vector<double> kernel_compose(int n, int m);

// Exact (integer arithmetic) check of the dominations used by the kernel
// calculus: 2*kernel_of(m+1) - kernel_compose(n,m) >= 0 entrywise, and the
// factor-2 window domination 2*T_n - W_r >= 0 for 2^{n-1} <= r < 2^n.
bool kernel_domination_exact(int n, int m);
bool window_domination_exact(int n, long r);

// |<T_n f, g> - <f, T_n g>| under the grid pairing sum_j Re tr(f(j)* g(j)).
double selfadjoint_check(const DyadicLevel& level, const GridFunction& f,
                         const GridFunction& g);

}  // namespace ncmax
