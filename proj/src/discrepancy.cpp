#include "interlace/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace interlace {

namespace {

void require_matching(std::size_t matrices, std::size_t dists) {
  if (matrices != dists) {
    throw Error(Errc::DimensionMismatch, std::to_string(dists) + " distributions for " +
                                             std::to_string(matrices) + " matrices");
  }
}

double sigma_from(const std::vector<HermitianMatrix>& psd,
                  const std::vector<FiniteDistribution>& dists) {
  double single = 0.0;
  HermitianMatrix total = HermitianMatrix::zero(psd.front().dim());
  for (std::size_t i = 0; i < psd.size(); ++i) {
    const double var = dists[i].variance();
    const double tr = psd[i].trace();
    single = std::max(single, var * tr * tr);
    total = total + psd[i].scaled(var * tr);
  }
  return std::sqrt(std::max(single, operator_norm(total)));
}

FiniteDistribution drop_null(const FiniteDistribution& dist) {
  std::vector<double> v;
  std::vector<double> p;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist.probs()[i] > 0.0) {
      v.push_back(dist.values()[i]);
      p.push_back(dist.probs()[i]);
    }
  }
  if (v.size() == dist.size()) return dist;
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return FiniteDistribution(std::move(v), std::move(p));
}

}  // namespace

double sigma_bound(const DiscrepancyInstance& inst) {
  require_matching(inst.ensemble.size(), inst.dists.size());
  require_psd(inst.ensemble);
  return sigma_from(inst.ensemble.matrices(), inst.dists);
}

FiniteDistribution two_point_reduction(const FiniteDistribution& dist) {
  const FiniteDistribution d = drop_null(dist);
  if (d.size() <= 2) {
    return d.size() == 1 ? FiniteDistribution::point_mass(d.values().front()) : d;
  }
  const double mu = d.mean();
  const auto& v = d.values();
  const double width = 1e-12 * (1.0 + std::max(std::abs(v.front()), std::abs(v.back())));
  for (double x : v) {
    if (std::abs(x - mu) <= width) return FiniteDistribution::point_mass(x);
  }
  const auto above = std::upper_bound(v.begin(), v.end(), mu);
  const double hi = *above;
  const double lo = *(above - 1);
  const double p_lo = (hi - mu) / (hi - lo);
  return FiniteDistribution({lo, hi}, {p_lo, 1.0 - p_lo});
}

double discrepancy_norm(const std::vector<HermitianMatrix>& matrices,
                        const std::vector<FiniteDistribution>& dists,
                        const std::vector<double>& outcome) {
  require_matching(matrices.size(), dists.size());
  require_matching(matrices.size(), outcome.size());
  if (matrices.empty()) return 0.0;
  HermitianMatrix total = HermitianMatrix::zero(matrices.front().dim());
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    total = total + matrices[i].scaled(outcome[i] - dists[i].mean());
  }
  return operator_norm(total);
}

DiscrepancyResult solve_kls(const DiscrepancyInstance& inst, bool reduce,
                            const DescentOptions& options) {
  require_matching(inst.ensemble.size(), inst.dists.size());
  require_psd(inst.ensemble);
  const auto& mats = inst.ensemble.matrices();
  const std::size_t m = mats.size();

  DiscrepancyResult res;
  res.sigma_input = sigma_from(mats, inst.dists);
  std::vector<FiniteDistribution> work;
  for (const auto& d : inst.dists) work.push_back(reduce ? two_point_reduction(d) : drop_null(d));
  res.sigma = sigma_from(mats, work);
  res.bound = 4.0 * res.sigma;

  if (res.sigma == 0.0) {
    // Every variable with nonzero variance multiplies a zero matrix; any
    // outcome has zero discrepancy. Take the most likely value.
    res.zero_sigma = true;
    for (const auto& d : work) {
      const auto it = std::max_element(d.probs().begin(), d.probs().end());
      res.outcome.push_back(d.values()[static_cast<std::size_t>(it - d.probs().begin())]);
    }
  } else {
    std::vector<FiniteDistribution> scaled;
    for (const auto& d : work) scaled.push_back(d.affine(1.0 / res.sigma, -d.mean() / res.sigma));
    res.certificate = greedy_descent_quadratic(inst.ensemble, scaled, options);
    for (std::size_t i = 0; i < m; ++i) {
      res.outcome.push_back(work[i].values()[res.certificate.choices[i]]);
    }
  }
  res.achieved = discrepancy_norm(mats, inst.dists, res.outcome);
  return res;
}

double hermitian_sigma(const std::vector<HermitianMatrix>& matrices,
                       const std::vector<FiniteDistribution>& dists) {
  require_matching(matrices.size(), dists.size());
  if (matrices.empty()) throw Error(Errc::EmptyMatrix, "no matrices");
  std::vector<HermitianMatrix> abs;
  for (const auto& b : matrices) abs.push_back(absolute_value(b));
  return sigma_from(abs, dists);
}

DiscrepancyResult solve_hermitian(const std::vector<HermitianMatrix>& matrices,
                                  const std::vector<FiniteDistribution>& dists, bool reduce,
                                  const DescentOptions& options) {
  require_matching(matrices.size(), dists.size());
  const MatrixEnsemble input(matrices);
  if (2 * input.dim() > kMaxTableDim) {
    throw Error(Errc::SizeGuard, "hermitian lift doubles the dimension; d <= " +
                                     std::to_string(kMaxTableDim / 2) + " required");
  }
  std::vector<HermitianMatrix> lifts;
  for (const auto& b : matrices) {
    auto [plus, minus] = positive_negative_parts(b);
    lifts.push_back(block_diagonal({plus, minus}));
  }
  DiscrepancyResult res = solve_kls({MatrixEnsemble(std::move(lifts)), dists}, reduce, options);
  std::vector<FiniteDistribution> work;
  for (const auto& d : dists) work.push_back(reduce ? two_point_reduction(d) : d);
  res.sigma_input = hermitian_sigma(matrices, dists);
  res.sigma = hermitian_sigma(matrices, work);
  res.bound = 8.0 * res.sigma;
  res.achieved = discrepancy_norm(matrices, dists, res.outcome);
  return res;
}

}  // namespace interlace
