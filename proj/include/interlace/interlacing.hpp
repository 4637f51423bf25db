#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "interlace/linalg.hpp"
#include "interlace/mixed_charpoly.hpp"
#include "interlace/polynomial.hpp"

namespace interlace {

/// Finite-support real random variable. Values are stored in ascending order
/// and must be distinct; probabilities are nonnegative and sum to 1 within
/// 1e-12.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<double> values, std::vector<double> probs);

  static FiniteDistribution point_mass(double value);
  /// 0 with probability 1 - t, 1 with probability t; point masses at t = 0, 1.
  static FiniteDistribution bernoulli(double t);
  static FiniteDistribution uniform(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return values_.size(); }

  double mean() const noexcept;
  double second_moment() const noexcept;
  /// E[(xi - E xi)^2], computed from centered values.
  double variance() const noexcept;

  /// Index of `value` in the support, matched within 1e-12 * (1 + |value|).
  std::optional<std::size_t> index_of(double value) const noexcept;

  /// a * xi + b for a != 0.
  FiniteDistribution affine(double a, double b) const;

 private:
  std::vector<double> values_;
  std::vector<double> probs_;
};

struct DescentCertificate {
  std::vector<std::size_t> choices;  // chosen support index per level
  std::vector<double> assignment;    // chosen values (quadratic mode only)
  std::vector<double> maxroots;      // root polynomial, then one per level
  std::vector<double> residuals;     // numerical slack per level
  RealPolynomial final_poly;

  /// maxroots[k+1] <= maxroots[k] + slack for every level.
  bool non_increasing(double slack) const noexcept;
};

struct DescentOptions {
  double root_tol = 1e-10;  // bisection width of the certified maxroot
  double tie_tol = 1e-9;    // branches closer than this are ties
  double real_tol = 1e-7;   // real-rootedness gate on every polynomial
  /// Polynomials handed to the descent are in the variable x - origin;
  /// reported maxroots are shifted back.
  double origin = 0.0;
};

/// Evaluates the conditional polynomial at a level given the chosen support
/// indices of the earlier levels and a candidate index for this level.
using BranchEvaluator =
    std::function<RealPolynomial(const std::vector<std::size_t>& prefix, std::size_t candidate)>;

/// Level-by-level argmin over positive-probability candidates; ties go to
/// the lowest index. Throws NotRealRooted if any polynomial fails the gate.
DescentCertificate greedy_descent(const RealPolynomial& root,
                                  const std::vector<std::vector<double>>& level_probs,
                                  const BranchEvaluator& eval, const DescentOptions& options = {});

/// Spec for the product operator with some indices fixed to support values.
DerivativeSpec conditional_spec_quadratic(const std::vector<FiniteDistribution>& dists,
                                          const std::vector<std::optional<double>>& fixed);

DescentCertificate greedy_descent_quadratic(const MatrixEnsemble& ensemble,
                                            const std::vector<FiniteDistribution>& dists,
                                            const DescentOptions& options = {});

/// A random PSD matrix with finitely many values.
struct MatrixChoice {
  std::vector<HermitianMatrix> values;
  std::vector<double> probs;

  HermitianMatrix mean() const;
};

DescentCertificate greedy_descent_linear(const std::vector<MatrixChoice>& choices,
                                         const DescentOptions& options = {});

}  // namespace interlace
