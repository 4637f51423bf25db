#pragma once

#include <complex>
#include <vector>

#include "interlace/error.hpp"

namespace interlace {

inline constexpr double kDefaultRootTol = 1e-9;

/// Real polynomial with ascending coefficients. Trailing (leading-degree)
/// coefficients that are exactly zero are trimmed; the zero polynomial has
/// no coefficients and degree -1.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> coeffs);

  static RealPolynomial monomial(int degree, double coeff = 1.0);
  /// prod (x - r) over the given roots.
  static RealPolynomial from_roots(const std::vector<double>& roots);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^k, 0 outside the stored range.
  double coeff(int k) const noexcept;
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  /// |leading - 1| <= tol * max(1, max |coeff|).
  bool is_monic(double tol = 1e-9) const noexcept;

  double operator()(double x) const noexcept;
  std::complex<double> operator()(std::complex<double> x) const noexcept;

  friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

RealPolynomial operator+(const RealPolynomial& p, const RealPolynomial& q);
RealPolynomial operator-(const RealPolynomial& p, const RealPolynomial& q);
RealPolynomial operator*(const RealPolynomial& p, const RealPolynomial& q);
RealPolynomial scale(const RealPolynomial& p, double t);
/// p(alpha * x + beta).
RealPolynomial compose_affine(const RealPolynomial& p, double alpha, double beta);
RealPolynomial derivative(const RealPolynomial& p);

/// (-1)^deg p(-x); maps roots r to -r and keeps the leading sign.
RealPolynomial reflect(const RealPolynomial& p);
/// t^deg p(x / t) for monic p and t > 0; multiplies every root by t.
RealPolynomial root_scaling(const RealPolynomial& p, double t);

/// 1 + max |a_j / a_n|; every root has modulus below this.
double cauchy_bound(const RealPolynomial& p);

/// max_j |p_j - q_j| / max(1, max_j |q_j|).
double relative_coeff_error(const RealPolynomial& p, const RealPolynomial& q);

struct RootReport {
  double maxroot = 0.0;
  double minroot = 0.0;
  bool real_rooted = false;
  double max_imag_residual = 0.0;
  std::vector<std::complex<double>> roots;  // after cluster collapse, unordered
};

/// All roots through companion-matrix eigenvalues plus one Newton step per
/// root. Clusters of roots that are consistent with a perturbed multiple
/// real root are collapsed onto their (real) centroid before the imaginary
/// parts are compared against tol * (1 + max |root|).
RootReport root_report(const RealPolynomial& p, double tol = kDefaultRootTol);

/// Largest root refined by bisection, cascading down the derivative chain so
/// that even-multiplicity roots (no sign change) are still bracketed. Throws
/// NotRealRooted when root_report at `real_tol` rejects p. The report used
/// for that decision is copied to `report` when given.
double maxroot_certified(const RealPolynomial& p, double tol = 1e-10, double real_tol = 1e-7,
                         RootReport* report = nullptr);

}  // namespace interlace
