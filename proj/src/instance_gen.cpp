#include "interlace/instance_gen.hpp"

#include <algorithm>
#include <cmath>

#include "interlace/mixed_charpoly.hpp"

namespace interlace {

namespace {

Eigen::MatrixXcd gaussian(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

FiniteDistribution random_two_valued(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> prob(0.1, 0.9);
  double a = unit(rng);
  double b = unit(rng);
  while (std::abs(a - b) < 0.05) b = unit(rng);
  if (a > b) std::swap(a, b);
  const double p = prob(rng);
  return FiniteDistribution({a, b}, {p, 1.0 - p});
}

}  // namespace

GenKind parse_gen_kind(const std::string& name) {
  if (name == "psd-trace-capped") return GenKind::PsdTraceCapped;
  if (name == "rank-one") return GenKind::RankOne;
  if (name == "lyapunov") return GenKind::Lyapunov;
  if (name == "ksr") return GenKind::Ksr;
  throw Error(Errc::InvalidArgument, "unknown instance kind '" + name + "'");
}

std::string gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::PsdTraceCapped: return "psd-trace-capped";
    case GenKind::RankOne: return "rank-one";
    case GenKind::Lyapunov: return "lyapunov";
    case GenKind::Ksr: return "ksr";
  }
  return "unknown";
}

HermitianMatrix random_psd(std::mt19937_64& rng, std::size_t d, std::size_t k) {
  const Eigen::MatrixXcd g = gaussian(rng, d, k);
  return make_hermitian(Eigen::MatrixXcd(g * g.adjoint()));
}

HermitianMatrix random_hermitian(std::mt19937_64& rng, std::size_t d) {
  const Eigen::MatrixXcd g = gaussian(rng, d, d);
  return make_hermitian(Eigen::MatrixXcd((g + g.adjoint()) * 0.5));
}

MatrixEnsemble normalize_quadratic(const MatrixEnsemble& ensemble) {
  require_psd(ensemble);
  double max_trace = 0.0;
  HermitianMatrix weighted = HermitianMatrix::zero(ensemble.dim());
  for (const auto& b : ensemble) {
    max_trace = std::max(max_trace, b.trace());
    weighted = weighted + b.scaled(b.trace());
  }
  const double top = max_eigenvalue(weighted);
  if (!(max_trace > 0.0)) return ensemble;
  // Traces scale linearly, the weighted sum quadratically.
  const double s = std::min(1.0 / max_trace, 1.0 / std::sqrt(top));
  std::vector<HermitianMatrix> out;
  for (const auto& b : ensemble) out.push_back(b.scaled(s));
  return MatrixEnsemble(std::move(out));
}

EnsembleFile gen_instance(const GenOptions& opt) {
  if (opt.d == 0 || opt.m == 0) throw Error(Errc::InvalidArgument, "d and m must be positive");
  if (opt.d > kMaxTableDim || opt.m > kMaxTableCount) {
    throw Error(Errc::SizeGuard, "generator limited to d <= " + std::to_string(kMaxTableDim) +
                                     ", m <= " + std::to_string(kMaxTableCount));
  }
  if (!(opt.epsilon > 0.0 && opt.epsilon <= 1.0)) {
    throw Error(Errc::EpsilonOutOfRange, "epsilon must lie in (0, 1]");
  }
  if (opt.kind == GenKind::Ksr && opt.r == 0) {
    throw Error(Errc::BadProportions, "ksr needs at least one block");
  }

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> half_to_one(0.5, 1.0);
  std::size_t k = opt.d;
  if (opt.kind == GenKind::RankOne) k = 1;
  else if (opt.rank > 0) k = std::min(opt.rank, opt.d);

  std::vector<HermitianMatrix> mats;
  for (std::size_t i = 0; i < opt.m; ++i) {
    const HermitianMatrix a = random_psd(rng, opt.d, k);
    mats.push_back(a.scaled(opt.epsilon * half_to_one(rng) / a.trace()));
  }
  const double norm = operator_norm(MatrixEnsemble(mats).sum());
  if (norm > 1.0) {
    for (auto& a : mats) a = a.scaled(1.0 / norm);
  }

  EnsembleFile file;
  file.dim = opt.d;
  file.matrices = std::move(mats);
  switch (opt.kind) {
    case GenKind::PsdTraceCapped:
    case GenKind::RankOne: {
      std::vector<FiniteDistribution> dists;
      for (std::size_t i = 0; i < opt.m; ++i) dists.push_back(random_two_valued(rng));
      file.distributions = std::move(dists);
      break;
    }
    case GenKind::Lyapunov: {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<double> w;
      for (std::size_t i = 0; i < opt.m; ++i) w.push_back(unit(rng));
      file.weights = std::move(w);
      break;
    }
    case GenKind::Ksr:
      file.proportions = std::vector<double>(opt.r, 1.0 / static_cast<double>(opt.r));
      break;
  }
  return file;
}

}  // namespace interlace
