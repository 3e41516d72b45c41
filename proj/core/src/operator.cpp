#include "ncmax/operator.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace ncmax {

namespace {

constexpr double kHermitizeTol = 1e-12;
constexpr double kClipRel = 1e-10;

void require_square(const GeneralOperator& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument(std::string(what) + ": matrix must be square, nonempty");
}

Eigen::VectorXd singular_values(const GeneralOperator& x) {
  return x.jacobiSvd().singularValues();
}

}  // namespace

double conjugate_exponent(double p) {
  if (is_inf_exponent(p)) return 1.0;
  if (p < 1.0) throw std::invalid_argument("conjugate_exponent: p < 1");
  if (p == 1.0) return kPInf;
  return p / (p - 1.0);
}

HermitianOperator::HermitianOperator(const GeneralOperator& m) {
  require_square(m, "HermitianOperator");
  double scale = m.norm();
  double dev = (m - m.adjoint()).norm();
  if (dev > kHermitizeTol * (1.0 + scale))
    throw std::invalid_argument("HermitianOperator: input is not Hermitian");
  mat_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::trusted(GeneralOperator m) {
  require_square(m, "HermitianOperator");
  return HermitianOperator(std::move(m), trusted_tag{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  return trusted(mat_ + o.mat_);
}
HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  return trusted(mat_ - o.mat_);
}
HermitianOperator HermitianOperator::operator*(double c) const {
  return trusted(mat_ * c);
}

HermitianOperator HermitianOperator::zero(Eigen::Index d) {
  return trusted(GeneralOperator::Zero(d, d));
}
HermitianOperator HermitianOperator::identity(Eigen::Index d) {
  return trusted(GeneralOperator::Identity(d, d));
}

HermitianOperator hermitize(const GeneralOperator& m) {
  require_square(m, "hermitize");
  return HermitianOperator::trusted(0.5 * (m + m.adjoint()));
}

SpectralDecomposition spectral(const HermitianOperator& x) {
  const Eigen::Index d = x.dim();
  Eigen::SelfAdjointEigenSolver<GeneralOperator> es;
  if (d <= 3)
    es.computeDirect(x.mat());
  else
    es.compute(x.mat());
  if (es.info() != Eigen::Success)
    throw numerical_error("spectral: eigensolver failed");

  SpectralDecomposition sd;
  sd.eigenvalues = es.eigenvalues();  // ascending
  sd.eigenvectors = es.eigenvectors();
  // Sign normalization: first component of nonnegligible modulus made real
  // positive, for reproducible decompositions across platforms.
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      Complex v = sd.eigenvectors(i, j);
      if (std::abs(v) > 1e-12) {
        sd.eigenvectors.col(j) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  return sd;
}

PsdCheck psd_check(const HermitianOperator& x, double tol) {
  SpectralDecomposition sd = spectral(x);
  double mn = sd.eigenvalues(0);
  return PsdCheck{mn >= -tol, mn};
}

bool loewner_leq(const HermitianOperator& x, const HermitianOperator& y,
                 double tol) {
  if (x.dim() != y.dim())
    throw std::invalid_argument("loewner_leq: dimension mismatch");
  return psd_check(y - x, tol).is_psd;
}

HermitianOperator matrix_power(const HermitianOperator& x, double s) {
  SpectralDecomposition sd = spectral(x);
  const Eigen::Index d = x.dim();
  double top = std::max(std::abs(sd.eigenvalues(0)), std::abs(sd.eigenvalues(d - 1)));
  double clip = kClipRel * top;
  Eigen::VectorXd lam = sd.eigenvalues;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (lam(i) < -clip)
      throw std::invalid_argument("matrix_power: matrix is not PSD");
    if (lam(i) < 0) lam(i) = 0.0;
    if (s < 0 && lam(i) <= clip)
      throw std::invalid_argument("matrix_power: negative power of a singular matrix");
  }
  Eigen::VectorXd powed(d);
  for (Eigen::Index i = 0; i < d; ++i)
    powed(i) = (lam(i) == 0.0 && s > 0) ? 0.0 : std::pow(lam(i), s);
  GeneralOperator out = sd.eigenvectors * powed.asDiagonal() *
                        sd.eigenvectors.adjoint();
  return hermitize(out);
}

HermitianOperator abs_op(const GeneralOperator& x) {
  require_square(x, "abs_op");
  Eigen::JacobiSVD<GeneralOperator> svd(x, Eigen::ComputeThinV);
  GeneralOperator out = svd.matrixV() * svd.singularValues().asDiagonal() *
                        svd.matrixV().adjoint();
  return hermitize(out);
}

double schatten_norm(const GeneralOperator& x, double p) {
  require_square(x, "schatten_norm");
  if (!(p >= 1.0))
    throw std::invalid_argument("schatten_norm: p < 1 (quasi-norms unsupported)");
  Eigen::VectorXd sv = singular_values(x);
  if (is_inf_exponent(p)) return sv.size() ? sv.maxCoeff() : 0.0;
  if (p == 1.0) return sv.sum();
  if (p == 2.0) return sv.norm();
  double top = sv.maxCoeff();
  if (top == 0.0) return 0.0;
  // factor out the top singular value to avoid overflow for large p
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    acc += std::pow(sv(i) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

Complex trace_pair(const GeneralOperator& x, const GeneralOperator& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("trace_pair: dimension mismatch");
  return (x * y).trace();
}

}  // namespace ncmax
