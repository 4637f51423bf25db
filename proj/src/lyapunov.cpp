#include "interlace/lyapunov.hpp"

#include <cmath>
#include <string>

#include "interlace/mixed_charpoly.hpp"

namespace interlace {

namespace {

EnsembleStats require_contraction_ensemble(const MatrixEnsemble& ensemble) {
  require_psd(ensemble);
  const auto stats = ensemble_stats(ensemble);
  if (!stats.sum_leq_identity) {
    throw Error(Errc::SumExceedsIdentity,
                "sum of members has norm " + std::to_string(stats.sum_norm) + " > 1");
  }
  return stats;
}

}  // namespace

SelectionResult lyapunov_select(const MatrixEnsemble& ensemble, const std::vector<double>& weights,
                                const DescentOptions& options) {
  if (weights.size() != ensemble.size()) {
    throw Error(Errc::DimensionMismatch, std::to_string(weights.size()) + " weights for " +
                                             std::to_string(ensemble.size()) + " matrices");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0 && weights[i] <= 1.0)) {
      throw Error(Errc::WeightOutOfRange, "weight " + std::to_string(i) + " = " +
                                              std::to_string(weights[i]) + " outside [0, 1]");
    }
  }
  const auto stats = require_contraction_ensemble(ensemble);

  std::vector<FiniteDistribution> dists;
  for (double t : weights) dists.push_back(FiniteDistribution::bernoulli(t));
  const auto res = solve_kls({ensemble, dists}, true, options);

  SelectionResult out;
  HermitianMatrix diff = HermitianMatrix::zero(ensemble.dim());
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const bool chosen = res.outcome[i] == 1.0;
    if (chosen) out.subset.push_back(i);
    diff = diff + ensemble[i].scaled((chosen ? 1.0 : 0.0) - weights[i]);
  }
  out.achieved = operator_norm(diff);
  out.epsilon = stats.epsilon;
  out.bound = 2.0 * std::sqrt(stats.epsilon);
  out.sigma = res.sigma;
  out.certificate = res.certificate;
  return out;
}

WeightedApproxResult weighted_approx(const MatrixEnsemble& ensemble, double t,
                                     const DescentOptions& options) {
  if (!(t > 0.0 && t < 1.0)) {
    throw Error(Errc::WeightOutOfRange, "t = " + std::to_string(t) + " must lie in (0, 1)");
  }
  WeightedApproxResult out;
  out.selection = lyapunov_select(ensemble, std::vector<double>(ensemble.size(), t), options);
  const double eps = out.selection.epsilon;
  out.bound_sqrt = 2.0 * std::sqrt(eps);
  out.bound_two_sided = 2.0 * std::sqrt(2.0 * eps) + 2.0 * eps;
  return out;
}

PartitionResult ks_r_partition(const MatrixEnsemble& ensemble, const std::vector<double>& proportions,
                               const DescentOptions& options) {
  const std::size_t r = proportions.size();
  if (r == 0) throw Error(Errc::BadProportions, "at least one block proportion is required");
  double total = 0.0;
  for (double t : proportions) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(Errc::BadProportions, "proportion " + std::to_string(t) + " is not positive");
    }
    total += t;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::BadProportions, "proportions sum to " + std::to_string(total));
  }
  const auto stats = require_contraction_ensemble(ensemble);
  const std::size_t d = ensemble.dim();
  const std::size_t m = ensemble.size();
  const HermitianMatrix sum = ensemble.sum();

  PartitionResult out;
  out.epsilon = stats.epsilon;
  std::vector<std::size_t> slot(m, 0);
  if (stats.epsilon > 0.0) {
    const auto pieces = rank_one_completion(sum, stats.epsilon);
    out.completion_size = pieces.size();
    ComplexMatrix rebuilt = sum.matrix();
    for (const auto& b : pieces) rebuilt += b.matrix();
    const auto dd = static_cast<Eigen::Index>(d);
    const double err = (rebuilt - ComplexMatrix::Identity(dd, dd)).norm();
    if (err > 1e-8 * static_cast<double>(d)) {
      throw Error(Errc::NumericalFailure,
                  "completion does not reconstruct the identity (error " + std::to_string(err) + ")");
    }

    // The deterministic completion pieces are rank one in each block, so
    // their operators act as the base shift -(I - A) in every block.
    std::vector<double> scales;
    for (double t : proportions) scales.push_back(1.0 / t);
    // The roots of the root polynomial average exactly 1 and cluster around
    // the spectrum of I - A; expanding around 1 keeps the cluster resolved.
    const BlockPencil pencil(HermitianMatrix::identity(d) - sum, ensemble, scales, 1.0);
    const auto root = pencil.evaluate(std::vector<int>(m, BlockPencil::kUndecided));
    const BranchEvaluator eval = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
      std::vector<int> placement(m, BlockPencil::kUndecided);
      for (std::size_t i = 0; i < prefix.size(); ++i) placement[i] = static_cast<int>(prefix[i]);
      placement[prefix.size()] = static_cast<int>(cand);
      return pencil.evaluate(placement);
    };
    DescentOptions shifted = options;
    shifted.origin = pencil.origin();
    out.certificate =
        greedy_descent(root, std::vector<std::vector<double>>(m, proportions), eval, shifted);
    slot = out.certificate.choices;
  }

  out.blocks.assign(r, {});
  for (std::size_t i = 0; i < m; ++i) out.blocks[slot[i]].push_back(i);

  const double gap = 2.0 * std::sqrt(static_cast<double>(r) * out.epsilon) +
                     static_cast<double>(r) * out.epsilon;
  const double norm_factor = std::pow(1.0 + std::sqrt(static_cast<double>(r) * out.epsilon), 2);
  out.deviation_bound = gap;
  for (std::size_t k = 0; k < r; ++k) {
    const double t = proportions[k];
    HermitianMatrix part = HermitianMatrix::zero(d);
    for (std::size_t i : out.blocks[k]) part = part + ensemble[i];
    out.block_norms.push_back(operator_norm(part));
    out.bounds.push_back(t * norm_factor);
    const HermitianMatrix upper = (sum + HermitianMatrix::identity(d).scaled(gap)).scaled(t) - part;
    const double margin = min_eigenvalue(upper);
    out.upper_margin.push_back(margin);
    out.upper_cert.push_back(margin >= -1e-7);
    out.deviation.push_back(operator_norm(part - sum.scaled(t)));
    out.sharp_deviation_bound.push_back(std::max(t, 1.0 - t) * gap);
  }
  return out;
}

std::size_t numerical_rank(const HermitianMatrix& h) {
  const auto ev = eigenvalues(h);
  const double scale = 1.0 + std::max(std::abs(ev.front()), std::abs(ev.back()));
  std::size_t rank = 0;
  for (double v : ev) {
    if (std::abs(v) > 1e-9 * scale) ++rank;
  }
  return rank;
}

double mixed_bound_reference(double epsilon, std::optional<std::size_t> rank_cap) {
  if (!(epsilon >= 0.0)) throw Error(Errc::EpsilonOutOfRange, "epsilon must be nonnegative");
  if (!rank_cap) return std::pow(1.0 + std::sqrt(epsilon), 2);
  const double k = static_cast<double>(*rank_cap);
  if (*rank_cap < 2 || !(epsilon > 0.0) || epsilon > (k - 1.0) * (k - 1.0) / k) {
    throw Error(Errc::EpsilonOutOfRange, "rank-capped bound needs k >= 2 and 0 < eps <= (k-1)^2/k");
  }
  return std::pow(std::sqrt(1.0 - epsilon / (k - 1.0)) + std::sqrt(epsilon), 2);
}

double mixed_bound_reference(const MatrixEnsemble& ensemble, std::optional<std::size_t> rank_cap) {
  const auto stats = require_contraction_ensemble(ensemble);
  if (rank_cap) {
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
      if (numerical_rank(ensemble[i]) > *rank_cap) {
        throw Error(Errc::InvalidArgument, "member " + std::to_string(i) + " has rank above " +
                                               std::to_string(*rank_cap));
      }
    }
  }
  return mixed_bound_reference(stats.epsilon, rank_cap);
}

}  // namespace interlace
