#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "interlace/discrepancy.hpp"
#include "interlace/interlacing.hpp"
#include "interlace/linalg.hpp"

namespace interlace {

struct SelectionResult {
  std::vector<std::size_t> subset;  // 0-based indices with s_i = 1
  double achieved = 0.0;            // || sum_{subset} T_i - sum t_i T_i ||
  double bound = 0.0;               // 2 sqrt(eps)
  double epsilon = 0.0;
  double sigma = 0.0;
  DescentCertificate certificate;
};

/// Rounds weights t_i in [0, 1] to a subset. Requires a PSD ensemble with
/// sum <= I. Throws NotPSD, SumExceedsIdentity, WeightOutOfRange.
SelectionResult lyapunov_select(const MatrixEnsemble& ensemble, const std::vector<double>& weights,
                                const DescentOptions& options = {});

struct WeightedApproxResult {
  SelectionResult selection;
  double bound_sqrt = 0.0;      // 2 sqrt(eps)
  double bound_two_sided = 0.0;  // 2 sqrt(2 eps) + 2 eps
};

/// All weights equal to t with 0 < t < 1.
WeightedApproxResult weighted_approx(const MatrixEnsemble& ensemble, double t,
                                     const DescentOptions& options = {});

struct PartitionResult {
  std::vector<std::vector<std::size_t>> blocks;  // 0-based, disjoint, covering
  std::vector<double> block_norms;               // || sum_{I_k} A_i ||
  std::vector<double> bounds;                    // t_k (1 + sqrt(r eps))^2
  std::vector<double> upper_margin;  // min eig of t_k (A + gap I) - sum_{I_k} A_i
  std::vector<bool> upper_cert;      // upper_margin >= -1e-7
  std::vector<double> deviation;     // || sum_{I_k} A_i - t_k A ||
  double deviation_bound = 0.0;      // 2 sqrt(r eps) + r eps
  std::vector<double> sharp_deviation_bound;  // max(t_k, 1 - t_k) * deviation_bound
  double epsilon = 0.0;
  std::size_t completion_size = 0;  // rank-one pieces of I - A
  DescentCertificate certificate;
};

/// Splits the ensemble into r = proportions.size() blocks. Throws NotPSD,
/// SumExceedsIdentity, BadProportions, SizeGuard.
PartitionResult ks_r_partition(const MatrixEnsemble& ensemble, const std::vector<double>& proportions,
                               const DescentOptions& options = {});

/// (1 + sqrt(eps))^2, or (sqrt(1 - eps/(k-1)) + sqrt(eps))^2 when every
/// member has rank at most k. Throws EpsilonOutOfRange unless k >= 2 and
/// 0 < eps <= (k-1)^2 / k.
double mixed_bound_reference(const MatrixEnsemble& ensemble,
                             std::optional<std::size_t> rank_cap = std::nullopt);
double mixed_bound_reference(double epsilon, std::optional<std::size_t> rank_cap = std::nullopt);

/// Number of eigenvalues above 1e-9 * (1 + ||H||).
std::size_t numerical_rank(const HermitianMatrix& h);

}  // namespace interlace
