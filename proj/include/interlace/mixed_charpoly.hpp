#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "interlace/linalg.hpp"
#include "interlace/polynomial.hpp"

namespace interlace {

/// Desk-scale limits for the subset tables.
inline constexpr std::size_t kMaxTableDim = 10;
inline constexpr std::size_t kMaxTableCount = 14;

/// One factor (1 + a d/dz + b d/dw + c d/dz d/dw) of a product operator.
struct DerivativeTerm {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// Index fixed to the value s.
  static DerivativeTerm fixed(double s) { return {-s, s, -s * s}; }
  /// Free index with first and second moments.
  static DerivativeTerm free(double mean, double second_moment) {
    return {-mean, mean, -second_moment};
  }
};

struct DerivativeSpec {
  std::vector<DerivativeTerm> terms;

  std::size_t size() const noexcept { return terms.size(); }
  /// Every factor has the form (-t, t, c) with c <= -t^2, i.e. it comes from
  /// a real random variable. Recorded for diagnostics, never enforced.
  bool stability_safe(double tol = 1e-12) const noexcept;

  /// (0, 0, -1) for every index: the quadratic mixed polynomial.
  static DerivativeSpec centered_unit(std::size_t m);
};

/// Multilinear derivatives D_S(x) of det(xI + sum z_i A_i) at z = 0. Every
/// D_S is a scalar multiple c_S of x^(d - |S|), and vanishes for |S| > d.
class SubsetDerivativeTable {
 public:
  /// Throws SizeGuard beyond kMaxTableDim / kMaxTableCount.
  static SubsetDerivativeTable build(const MatrixEnsemble& ensemble);

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return m_; }
  double scalar(std::uint32_t mask) const { return c_[mask]; }
  RealPolynomial derivative(std::uint32_t mask) const;

 private:
  std::size_t d_ = 0;
  std::size_t m_ = 0;
  std::vector<double> c_;
};

/// D_S for a subset given as 0-based indices.
RealPolynomial subset_derivative(const MatrixEnsemble& ensemble,
                                 const std::vector<std::size_t>& subset);

/// mu[s_1 A_1, ..., s_m A_m](x).
RealPolynomial mixed_char_poly(const MatrixEnsemble& ensemble, const std::vector<double>& scalars);
RealPolynomial mixed_char_poly(const SubsetDerivativeTable& table,
                               const std::vector<double>& scalars);

/// prod_i (1 + a_i dz_i + b_i dw_i + c_i dz_i dw_i) P(z) P(w) at z = w = 0,
/// where P(z) = det(xI + sum z_i A_i).
RealPolynomial expected_product_poly(const MatrixEnsemble& ensemble, const DerivativeSpec& spec);
RealPolynomial expected_product_poly(const SubsetDerivativeTable& table,
                                     const DerivativeSpec& spec);

RealPolynomial quadratic_mixed_char_poly(const MatrixEnsemble& ensemble);
RealPolynomial quadratic_mixed_char_poly(const SubsetDerivativeTable& table);

/// Reference evaluation by symbolic determinant expansion over multilinear
/// polynomials in z (and w) with z_i^2 = w_i^2 = 0. Limited to d, m <= 4.
inline constexpr std::size_t kOracleMaxDim = 4;
inline constexpr std::size_t kOracleMaxCount = 4;
RealPolynomial truncated_ring_linear(const MatrixEnsemble& ensemble,
                                     const std::vector<double>& scalars);
RealPolynomial truncated_ring_product(const MatrixEnsemble& ensemble, const DerivativeSpec& spec);

/// Single-matrix product polynomials: (1 - dz dw) P(z)P(w) and
/// (1 - 1/2 d^2/dz^2) P(z)^2, both at zero.
struct SingleMatrixOperators {
  RealPolynomial mixed;
  RealPolynomial diagonal;
};
SingleMatrixOperators single_matrix_operators(const HermitianMatrix& b);

/// Mixed characteristic polynomial of an r-block diagonal ensemble in which
/// every d x d block carries the base pencil xI - C. Member i either appears
/// in every block as A_i (undecided) or only in block k as scale_k * A_i.
/// The polynomial is
///   prod_i (1 - dz_i) prod_k det(xI - C + sum_i z_i s_ik A_i)  at z = 0,
/// which equals the mixed characteristic polynomial of the explicit dr x dr
/// ensemble extended by rank-one pieces e_k e_k^T (x) v v^* of I_r (x) C.
class BlockPencil {
 public:
  static constexpr int kUndecided = -1;

  /// Polynomials are returned in the variable x - origin. Throws SizeGuard
  /// when d > kMaxTableDim, m > kMaxTableCount or d * r > kMaxBlockTotal.
  BlockPencil(const HermitianMatrix& shift, const MatrixEnsemble& ensemble,
              std::vector<double> block_scales, double origin = 0.0);

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return m_; }
  std::size_t blocks() const noexcept { return scales_.size(); }
  double origin() const noexcept { return origin_; }

  /// placement[i] is kUndecided or a block index in [0, r).
  RealPolynomial evaluate(const std::vector<int>& placement) const;

  static constexpr std::size_t kMaxBlockTotal = 48;

 private:
  std::size_t d_ = 0;
  std::size_t m_ = 0;
  std::vector<double> scales_;
  double origin_ = 0.0;
  std::vector<RealPolynomial> table_;  // D_T(x), indexed by mask
};

}  // namespace interlace
