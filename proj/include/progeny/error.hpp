#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace progeny {

enum class Errc {
  CycleDetected,
  IndexOutOfRange,
  SyntaxError,
  InvalidSpec,
  CapExceeded,
  ZeroDenominator,
  NumericalOverflow,
  DegenerateInterval,
  InvalidArgument,
  HypothesisUnmet,
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` tells callers what went
/// wrong without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace progeny
