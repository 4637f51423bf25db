#pragma once

#include <optional>
#include <string>
#include <vector>

#include "interlace/interlacing.hpp"
#include "interlace/linalg.hpp"

namespace interlace {

inline constexpr const char* kSchemaVersion = "1";

/// JSON interchange format. Matrices are row-major arrays of [re, im] pairs.
struct EnsembleFile {
  std::string schema_version = kSchemaVersion;
  std::size_t dim = 0;
  std::vector<HermitianMatrix> matrices;
  std::optional<std::vector<double>> weights;
  std::optional<std::vector<FiniteDistribution>> distributions;
  std::optional<std::vector<double>> proportions;
  std::optional<double> epsilon_override;

  MatrixEnsemble ensemble() const { return MatrixEnsemble(matrices); }
};

/// ParseError for malformed JSON or structure (with the element path),
/// ValidationError naming the failed invariant otherwise.
EnsembleFile parse_ensemble_text(const std::string& text);
EnsembleFile parse_ensemble(const std::string& path);

/// Deterministic pretty-printed JSON; doubles use shortest round-trip form.
std::string serialize_ensemble(const EnsembleFile& file);
void write_ensemble(const EnsembleFile& file, const std::string& path);

}  // namespace interlace
