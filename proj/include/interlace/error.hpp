#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace interlace {

enum class Errc {
  NotHermitian,
  EmptyMatrix,
  DimensionMismatch,
  NumericalFailure,
  NotPSD,
  NotContraction,
  BadSlot,
  NotMonic,
  NotRealRooted,
  SizeGuard,
  ValueNotInSupport,
  NotAboveRoots,
  BadDelta,
  QxNormalizationViolated,
  SumExceedsIdentity,
  WeightOutOfRange,
  BadProportions,
  EpsilonOutOfRange,
  InvalidArgument,
  ParseError,
  ValidationError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace interlace
