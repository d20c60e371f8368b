#include "progeny/error.hpp"

namespace progeny {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NumericalOverflow: return "NumericalOverflow";
    case Errc::DegenerateInterval: return "DegenerateInterval";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::HypothesisUnmet: return "HypothesisUnmet";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace progeny
