#include "ncmax/grid.hpp"

#include <cmath>
#include <cstdint>

namespace ncmax {

namespace {

GridFunction window_sum(const GridFunction& f, long r, double weight) {
  const Eigen::Index L = f.grid_size();
  if (2 * r + 1 > L)
    throw std::invalid_argument("window average: window does not fit the circle");
  const Eigen::Index d = f.dim();
  GridFunction out;
  out.values.resize(static_cast<std::size_t>(L), GeneralOperator::Zero(d, d));
  for (Eigen::Index j = 0; j < L; ++j) {
    GeneralOperator acc = GeneralOperator::Zero(d, d);
    for (long i = -r; i <= r; ++i) {
      Eigen::Index k = (j + i) % L;
      if (k < 0) k += L;
      acc += f.values[static_cast<std::size_t>(k)];
    }
    out.values[static_cast<std::size_t>(j)] = weight * acc;
  }
  return out;
}

}  // namespace

GridFunction GridFunction::make(std::vector<GeneralOperator> values) {
  if (values.empty())
    throw std::invalid_argument("GridFunction: needs at least one point");
  Eigen::Index d = values.front().rows();
  for (const auto& v : values)
    if (v.rows() != d || v.cols() != d)
      throw std::invalid_argument("GridFunction: mixed or non-square values");
  GridFunction f;
  f.values = std::move(values);
  return f;
}

GridFunction avg_apply(const GridFunction& f, const DyadicLevel& level) {
  if (level.n < 0)
    throw std::invalid_argument("avg_apply: level must be nonnegative");
  return window_sum(f, level.radius(), level.weight());
}

GridFunction window_average(const GridFunction& f, long r) {
  if (r < 1) throw std::invalid_argument("window_average: radius must be >= 1");
  return window_sum(f, r, 1.0 / (2.0 * static_cast<double>(r) + 1.0));
}

GridFunction abs_grid(const GridFunction& f) {
  GridFunction out;
  out.values.reserve(f.values.size());
  for (const auto& v : f.values) out.values.push_back(abs_op(v).mat());
  return out;
}

double grid_lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0))
    throw std::invalid_argument("grid_lp_norm: p < 1");
  if (is_inf_exponent(p)) {
    double m = 0.0;
    for (const auto& v : f.values)
      m = std::max(m, schatten_norm(v, kPInf));
    return m;
  }
  double acc = 0.0;
  for (const auto& v : f.values) {
    double s = schatten_norm(v, p);  // (tr|v|^p)^{1/p}
    acc += std::pow(s, p);
  }
  return std::pow(acc, 1.0 / p);
}

std::vector<double> kernel_of(const DyadicLevel& level) {
  long r = level.radius();
  return std::vector<double>(static_cast<std::size_t>(2 * r + 1), level.weight());
}

std::vector<double> kernel_compose(int n, int m) {
  long rn = 1L << n, rm = 1L << m;
  long r = rn + rm;
  double wn = 1.0 / (2.0 * rn + 1.0), wm = 1.0 / (2.0 * rm + 1.0);
  std::vector<double> out(static_cast<std::size_t>(2 * r + 1), 0.0);
  // overlap count of the two boxes at each offset
  for (long off = -r; off <= r; ++off) {
    long lo = std::max(-rn, off - rm);
    long hi = std::min(rn, off + rm);
    long count = hi - lo + 1;
    if (count > 0)
      out[static_cast<std::size_t>(off + r)] = wn * wm * static_cast<double>(count);
  }
  return out;
}

bool kernel_domination_exact(int n, int m) {
  if (n > m) return false;
  // 2 * 1/(2^{m+2}+1) [|j| <= 2^{m+1}]  vs  overlap/( (2^{n+1}+1)(2^{m+1}+1) )
  const std::int64_t rn = 1LL << n, rm = 1LL << m;
  const std::int64_t r = rn + rm, rs = 2 * rm;  // sigma(m) radius = 2^{m+1}
  const std::int64_t dn = 2 * rn + 1, dm = 2 * rm + 1, ds = 2 * rs + 1;
  for (std::int64_t off = -r; off <= r; ++off) {
    std::int64_t lo = std::max(-rn, off - rm);
    std::int64_t hi = std::min(rn, off + rm);
    std::int64_t count = std::max<std::int64_t>(hi - lo + 1, 0);
    std::int64_t lhs = (std::llabs(off) <= rs) ? 2 * dn * dm : 0;
    std::int64_t rhs = count * ds;
    if (lhs < rhs) return false;
  }
  return true;
}

bool window_domination_exact(int n, long r) {
  // 2/(2^{n+1}+1) >= 1/(2r+1) on the shared support and T_n's support covers
  // the window's: needs r <= 2^n and 2(2r+1) >= 2^{n+1}+1.
  const std::int64_t rn = 1LL << n;
  if (r < 1 || r > rn) return false;
  return 2 * (2 * static_cast<std::int64_t>(r) + 1) >= 2 * rn + 1;
}

double selfadjoint_check(const DyadicLevel& level, const GridFunction& f,
                         const GridFunction& g) {
  if (f.grid_size() != g.grid_size() || f.dim() != g.dim())
    throw std::invalid_argument("selfadjoint_check: shape mismatch");
  GridFunction tf = avg_apply(f, level);
  GridFunction tg = avg_apply(g, level);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    lhs += (tf.values[j].adjoint() * g.values[j]).trace().real();
    rhs += (f.values[j].adjoint() * tg.values[j]).trace().real();
  }
  return std::abs(lhs - rhs);
}

}  // namespace ncmax
