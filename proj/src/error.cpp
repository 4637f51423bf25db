#include "interlace/error.hpp"

namespace interlace {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::EmptyMatrix: return "EmptyMatrix";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::NotPSD: return "NotPSD";
    case Errc::NotContraction: return "NotContraction";
    case Errc::BadSlot: return "BadSlot";
    case Errc::NotMonic: return "NotMonic";
    case Errc::NotRealRooted: return "NotRealRooted";
    case Errc::SizeGuard: return "SizeGuard";
    case Errc::ValueNotInSupport: return "ValueNotInSupport";
    case Errc::NotAboveRoots: return "NotAboveRoots";
    case Errc::BadDelta: return "BadDelta";
    case Errc::QxNormalizationViolated: return "QxNormalizationViolated";
    case Errc::SumExceedsIdentity: return "SumExceedsIdentity";
    case Errc::WeightOutOfRange: return "WeightOutOfRange";
    case Errc::BadProportions: return "BadProportions";
    case Errc::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace interlace
