#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "interlace/error.hpp"

namespace interlace {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Relative hermiticity tolerance: asymmetry up to 1e-12 * (1 + max|entry|)
/// is symmetrized away, anything larger is rejected.
inline constexpr double kHermitianTol = 1e-12;
/// PSD slack: min eigenvalue >= -kPsdTol * (1 + ||H||).
inline constexpr double kPsdTol = 1e-10;

/// Dense d x d complex hermitian matrix. Immutable once constructed; the
/// only way in is through make_hermitian() or the named constructors, all of
/// which guarantee exact conjugate symmetry of the stored entries.
class HermitianMatrix {
 public:
  static HermitianMatrix zero(std::size_t dim);
  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(const std::vector<double>& diag);
  /// v v^* for a complex column vector.
  static HermitianMatrix outer(const Eigen::VectorXcd& v);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  double trace() const { return m_.diagonal().real().sum(); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator-() const;
  HermitianMatrix scaled(double factor) const;

 private:
  friend HermitianMatrix make_hermitian(const ComplexMatrix& entries, double tol);
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

inline HermitianMatrix operator*(double factor, const HermitianMatrix& h) {
  return h.scaled(factor);
}

/// Validates and symmetrizes `entries` as (M + M^*)/2. The tolerance is
/// relative: tol * (1 + max|entry|).
HermitianMatrix make_hermitian(const ComplexMatrix& entries, double tol = kHermitianTol);
HermitianMatrix make_hermitian(const std::vector<std::vector<Complex>>& entries,
                               double tol = kHermitianTol);

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  ComplexMatrix vectors;    // columns are orthonormal eigenvectors
};

EigenDecomposition eigen_decompose(const HermitianMatrix& h);
std::vector<double> eigenvalues(const HermitianMatrix& h);
double min_eigenvalue(const HermitianMatrix& h);
double max_eigenvalue(const HermitianMatrix& h);
double operator_norm(const HermitianMatrix& h);
bool is_psd(const HermitianMatrix& h, double tol = kPsdTol);

/// (H+, H-) with H = H+ - H-, both PSD and H+ H- = 0.
std::pair<HermitianMatrix, HermitianMatrix> positive_negative_parts(const HermitianMatrix& h);
/// |H| = H+ + H-.
HermitianMatrix absolute_value(const HermitianMatrix& h);

/// Splits I - A into PSD rank-one pieces of trace at most `epsilon`. Each
/// eigenvalue lambda of I - A contributes ceil(lambda / epsilon) equal copies
/// of (lambda / copies) v v^*.
std::vector<HermitianMatrix> rank_one_completion(const HermitianMatrix& a, double epsilon);

/// dr x dr block-diagonal matrix holding scale * A in block `slot` (1-based).
HermitianMatrix block_diagonal_lift(const HermitianMatrix& a, std::size_t r, std::size_t slot,
                                    double scale);
/// diag(blocks[0], blocks[1], ...).
HermitianMatrix block_diagonal(const std::vector<HermitianMatrix>& blocks);

class MatrixEnsemble {
 public:
  explicit MatrixEnsemble(std::vector<HermitianMatrix> matrices);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return matrices_.size(); }
  const HermitianMatrix& operator[](std::size_t i) const { return matrices_[i]; }
  const std::vector<HermitianMatrix>& matrices() const noexcept { return matrices_; }
  auto begin() const { return matrices_.begin(); }
  auto end() const { return matrices_.end(); }

  HermitianMatrix sum() const;

 private:
  std::size_t dim_;
  std::vector<HermitianMatrix> matrices_;
};

struct EnsembleStats {
  double epsilon = 0.0;   // max trace
  double sum_norm = 0.0;  // ||sum A_i||
  bool sum_leq_identity = false;
  bool all_psd = false;
};

EnsembleStats ensemble_stats(const MatrixEnsemble& ensemble);

/// Throws NotPSD naming the first offending member.
void require_psd(const MatrixEnsemble& ensemble);

}  // namespace interlace
