#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "interlace/ensemble_file.hpp"
#include "interlace/linalg.hpp"

namespace interlace {

enum class GenKind { PsdTraceCapped, RankOne, Lyapunov, Ksr };

/// "psd-trace-capped", "rank-one", "lyapunov", "ksr". InvalidArgument otherwise.
GenKind parse_gen_kind(const std::string& name);
std::string gen_kind_name(GenKind kind);

struct GenOptions {
  GenKind kind = GenKind::PsdTraceCapped;
  std::size_t d = 3;
  std::size_t m = 4;
  double epsilon = 0.25;
  std::uint64_t seed = 1;
  std::size_t r = 2;     // blocks, ksr only
  std::size_t rank = 0;  // member rank cap, 0 for full rank (psd-trace-capped)
};

/// Random PSD ensemble with max trace <= epsilon and sum <= I. Each member is
/// G G^* for a complex Gaussian d x k factor, rescaled to trace
/// epsilon * U[0.5, 1], and the whole ensemble is then divided by
/// max(1, ||sum||). Optional sections depend on the kind: two-valued
/// distributions (psd-trace-capped, rank-one), weights in [0, 1] (lyapunov),
/// equal proportions 1/r (ksr). Throws SizeGuard for d > 10 or m > 14 and
/// EpsilonOutOfRange unless 0 < epsilon <= 1.
EnsembleFile gen_instance(const GenOptions& options);

/// PSD d x d matrix G G^* with G a d x k standard complex Gaussian.
HermitianMatrix random_psd(std::mt19937_64& rng, std::size_t d, std::size_t k);
/// Hermitian matrix with standard complex Gaussian entries.
HermitianMatrix random_hermitian(std::mt19937_64& rng, std::size_t d);

/// Rescales a PSD ensemble so that max tr(B_i) <= 1 and
/// || sum tr(B_i) B_i || <= 1, scaling by the largest factor that achieves
/// both (with the binding one at equality).
MatrixEnsemble normalize_quadratic(const MatrixEnsemble& ensemble);

}  // namespace interlace
