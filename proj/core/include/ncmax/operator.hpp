#pragma once

// Hermitian matrix arithmetic, spectral functional calculus, Schatten norms,
// Loewner order and trace pairing. Everything downstream (vector-valued
// norms, dominant solves, grid averaging) is built on these primitives.

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <stdexcept>

namespace ncmax {

using Complex = std::complex<double>;

// A square complex matrix with no symmetry constraint.
using GeneralOperator = Eigen::MatrixXcd;

// Sentinel for the operator norm / sup exponent. An IEEE infinity, not a
// large float; compare with is_inf_exponent().
inline constexpr double kPInf = std::numeric_limits<double>::infinity();

inline bool is_inf_exponent(double p) { return std::isinf(p) && p > 0; }

// Conjugate exponent: 1/p + 1/q = 1.
double conjugate_exponent(double p);

class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A d x d Hermitian matrix. The constructor symmetrizes, so the invariant
// entries[i][j] == conj(entries[j][i]) holds exactly; inputs further than
// 1e-12 (relative) from Hermitian are rejected.
class HermitianOperator {
 public:
  explicit HermitianOperator(const GeneralOperator& m);

  // A matrix already known to be exactly Hermitian (internal fast path).
  static HermitianOperator trusted(GeneralOperator m);

  Eigen::Index dim() const { return mat_.rows(); }
  const GeneralOperator& mat() const { return mat_; }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double c) const;

  static HermitianOperator zero(Eigen::Index d);
  static HermitianOperator identity(Eigen::Index d);

 private:
  struct trusted_tag {};
  HermitianOperator(GeneralOperator m, trusted_tag) : mat_(std::move(m)) {}
  GeneralOperator mat_;
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // unitary, columns normalized so the first
                                 // nonzero component is real positive
};

struct PsdCheck {
  bool is_psd;
  double min_eig;
};

// (m + m*)/2.
HermitianOperator hermitize(const GeneralOperator& m);

// Eigendecomposition with deterministic ordering and sign normalization.
SpectralDecomposition spectral(const HermitianOperator& x);

// is_psd iff the smallest eigenvalue is >= -tol.
PsdCheck psd_check(const HermitianOperator& x, double tol = 0.0);

// x <= y in the Loewner order, i.e. y - x is PSD at tolerance tol.
bool loewner_leq(const HermitianOperator& x, const HermitianOperator& y,
                 double tol = 0.0);

// U diag(lambda_i^s) U* for PSD x. Eigenvalues in [-1e-10*||x||_inf, 0] are
// clipped to 0; anything more negative throws. Negative s requires a
// strictly positive spectrum. Convention 0^s = 0 for s > 0, 0^0 = 1.
HermitianOperator matrix_power(const HermitianOperator& x, double s);

// |x| = (x* x)^{1/2}, PSD by construction.
HermitianOperator abs_op(const GeneralOperator& x);

// (sum_i sigma_i^p)^{1/p} over singular values; p = inf gives max sigma_i.
// p < 1 is rejected.
double schatten_norm(const GeneralOperator& x, double p);

// tr(x y).
Complex trace_pair(const GeneralOperator& x, const GeneralOperator& y);

}  // namespace ncmax
