#include "interlace/interlacing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace interlace {

FiniteDistribution::FiniteDistribution(std::vector<double> values, std::vector<double> probs) {
  if (values.empty()) throw Error(Errc::InvalidArgument, "distribution has empty support");
  if (values.size() != probs.size()) {
    throw Error(Errc::DimensionMismatch, "distribution has " + std::to_string(values.size()) +
                                             " values but " + std::to_string(probs.size()) +
                                             " probabilities");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(Errc::InvalidArgument, "support value is not finite");
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
      throw Error(Errc::InvalidArgument, "probability " + std::to_string(probs[i]) + " is invalid");
    }
    total += probs[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(Errc::InvalidArgument, "probabilities sum to " + std::to_string(total));
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && values[order[k]] == values[order[k - 1]]) {
      throw Error(Errc::InvalidArgument, "support value " + std::to_string(values[order[k]]) +
                                             " repeated");
    }
    values_.push_back(values[order[k]]);
    probs_.push_back(probs[order[k]]);
  }
}

FiniteDistribution FiniteDistribution::point_mass(double value) {
  return FiniteDistribution({value}, {1.0});
}

FiniteDistribution FiniteDistribution::bernoulli(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(Errc::WeightOutOfRange, "Bernoulli parameter " + std::to_string(t) +
                                            " outside [0, 1]");
  }
  if (t == 0.0) return point_mass(0.0);
  if (t == 1.0) return point_mass(1.0);
  return FiniteDistribution({0.0, 1.0}, {1.0 - t, t});
}

FiniteDistribution FiniteDistribution::uniform(std::vector<double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "distribution has empty support");
  return FiniteDistribution(std::move(values), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double FiniteDistribution::mean() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += probs_[i] * values_[i];
  return s;
}

double FiniteDistribution::second_moment() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += probs_[i] * values_[i] * values_[i];
  return s;
}

double FiniteDistribution::variance() const noexcept {
  const double mu = mean();
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double c = values_[i] - mu;
    s += probs_[i] * c * c;
  }
  return s;
}

std::optional<std::size_t> FiniteDistribution::index_of(double value) const noexcept {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::abs(values_[i] - value) <= 1e-12 * (1.0 + std::abs(value))) return i;
  }
  return std::nullopt;
}

FiniteDistribution FiniteDistribution::affine(double a, double b) const {
  if (a == 0.0) throw Error(Errc::InvalidArgument, "affine map must be invertible");
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * values_[i] + b;
  return FiniteDistribution(std::move(v), probs_);
}

bool DescentCertificate::non_increasing(double slack) const noexcept {
  for (std::size_t k = 0; k + 1 < maxroots.size(); ++k) {
    if (maxroots[k + 1] > maxroots[k] + slack) return false;
  }
  return true;
}

namespace {

struct Evaluated {
  double maxroot;
  double disagreement;  // |certified - companion|
};

Evaluated evaluate_branch(const RealPolynomial& p, const DescentOptions& options,
                          const std::string& where) {
  if (p.degree() < 1) {
    throw Error(Errc::NumericalFailure, where + ": conditional polynomial is constant");
  }
  RootReport rep;
  try {
    const double r = maxroot_certified(p, options.root_tol, options.real_tol, &rep);
    return {r + options.origin, std::abs(r - rep.maxroot)};
  } catch (const Error& e) {
    if (e.code() == Errc::NotRealRooted) throw Error(Errc::NotRealRooted, where + ": " + e.what());
    throw;
  }
}

}  // namespace

DescentCertificate greedy_descent(const RealPolynomial& root,
                                  const std::vector<std::vector<double>>& level_probs,
                                  const BranchEvaluator& eval, const DescentOptions& options) {
  DescentCertificate cert;
  Evaluated parent = evaluate_branch(root, options, "root polynomial");
  cert.maxroots.push_back(parent.maxroot);
  cert.final_poly = root;
  std::vector<std::size_t> prefix;
  for (std::size_t level = 0; level < level_probs.size(); ++level) {
    const auto& probs = level_probs[level];
    std::vector<std::optional<Evaluated>> scores(probs.size());
    std::vector<RealPolynomial> polys(probs.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < probs.size(); ++j) {
      if (!(probs[j] > 0.0)) continue;
      polys[j] = eval(prefix, j);
      scores[j] = evaluate_branch(polys[j], options,
                                  "level " + std::to_string(level) + " candidate " +
                                      std::to_string(j));
      best = std::min(best, scores[j]->maxroot);
    }
    if (!std::isfinite(best)) {
      throw Error(Errc::InvalidArgument,
                  "level " + std::to_string(level) + " has no positive-probability candidate");
    }
    std::size_t chosen = 0;
    while (!scores[chosen] || scores[chosen]->maxroot > best + options.tie_tol) ++chosen;
    const Evaluated child = *scores[chosen];
    cert.choices.push_back(chosen);
    cert.maxroots.push_back(child.maxroot);
    cert.residuals.push_back(options.tie_tol + parent.disagreement + child.disagreement);
    cert.final_poly = polys[chosen];
    prefix.push_back(chosen);
    parent = child;
  }
  return cert;
}

DerivativeSpec conditional_spec_quadratic(const std::vector<FiniteDistribution>& dists,
                                          const std::vector<std::optional<double>>& fixed) {
  if (fixed.size() != dists.size()) {
    throw Error(Errc::DimensionMismatch, "partial assignment length does not match distributions");
  }
  DerivativeSpec spec;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    if (fixed[i]) {
      if (!dists[i].index_of(*fixed[i])) {
        throw Error(Errc::ValueNotInSupport, "value " + std::to_string(*fixed[i]) +
                                                 " is not in the support of variable " +
                                                 std::to_string(i));
      }
      spec.terms.push_back(DerivativeTerm::fixed(*fixed[i]));
    } else {
      spec.terms.push_back(DerivativeTerm::free(dists[i].mean(), dists[i].second_moment()));
    }
  }
  return spec;
}

DescentCertificate greedy_descent_quadratic(const MatrixEnsemble& ensemble,
                                            const std::vector<FiniteDistribution>& dists,
                                            const DescentOptions& options) {
  if (dists.size() != ensemble.size()) {
    throw Error(Errc::DimensionMismatch, std::to_string(dists.size()) + " distributions for " +
                                             std::to_string(ensemble.size()) + " matrices");
  }
  require_psd(ensemble);
  const auto table = SubsetDerivativeTable::build(ensemble);
  const std::size_t m = dists.size();

  std::vector<DerivativeTerm> free_terms;
  std::vector<std::vector<double>> level_probs;
  for (const auto& d : dists) {
    free_terms.push_back(DerivativeTerm::free(d.mean(), d.second_moment()));
    level_probs.push_back(d.probs());
  }
  const auto root = expected_product_poly(table, DerivativeSpec{free_terms});
  const BranchEvaluator eval = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
    DerivativeSpec spec{free_terms};
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      spec.terms[i] = DerivativeTerm::fixed(dists[i].values()[prefix[i]]);
    }
    spec.terms[prefix.size()] = DerivativeTerm::fixed(dists[prefix.size()].values()[cand]);
    return expected_product_poly(table, spec);
  };
  auto cert = greedy_descent(root, level_probs, eval, options);
  for (std::size_t i = 0; i < m; ++i) cert.assignment.push_back(dists[i].values()[cert.choices[i]]);
  return cert;
}

HermitianMatrix MatrixChoice::mean() const {
  if (values.empty()) throw Error(Errc::InvalidArgument, "matrix choice has no values");
  if (values.size() != probs.size()) {
    throw Error(Errc::DimensionMismatch, "matrix choice values and probabilities differ in length");
  }
  HermitianMatrix total = HermitianMatrix::zero(values.front().dim());
  for (std::size_t j = 0; j < values.size(); ++j) total = total + values[j].scaled(probs[j]);
  return total;
}

DescentCertificate greedy_descent_linear(const std::vector<MatrixChoice>& choices,
                                         const DescentOptions& options) {
  if (choices.empty()) throw Error(Errc::EmptyMatrix, "no random matrices");
  std::vector<HermitianMatrix> means;
  std::vector<std::vector<double>> level_probs;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    const auto& c = choices[i];
    // validates probabilities and support the same way as scalar variables
    std::vector<double> idx(c.values.size());
    std::iota(idx.begin(), idx.end(), 0.0);
    FiniteDistribution check(idx, c.probs);
    for (const auto& v : c.values) {
      if (!is_psd(v)) {
        throw Error(Errc::NotPSD, "a value of random matrix " + std::to_string(i) + " is not PSD");
      }
    }
    means.push_back(c.mean());
    level_probs.push_back(c.probs);
  }
  const MatrixEnsemble mean_ensemble(means);
  const std::vector<double> ones(choices.size(), 1.0);
  const auto root = mixed_char_poly(mean_ensemble, ones);
  const BranchEvaluator eval = [&](const std::vector<std::size_t>& prefix, std::size_t cand) {
    std::vector<HermitianMatrix> members = means;
    for (std::size_t i = 0; i < prefix.size(); ++i) members[i] = choices[i].values[prefix[i]];
    members[prefix.size()] = choices[prefix.size()].values[cand];
    return mixed_char_poly(MatrixEnsemble(std::move(members)), ones);
  };
  return greedy_descent(root, level_probs, eval, options);
}

}  // namespace interlace
