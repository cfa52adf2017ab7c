#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace biharm {

enum class Errc {
  out_of_domain,
  singular_point,
  tolerance_not_met,
  syntax_error,
  unknown_identifier,
  non_positive_factor,
  x_vanishes,
  non_biharmonic_input,
  step_failure,
  inversion_failure,
  unknown_case,
  invalid_override,
  io_error,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

  /// Usage-type errors map to CLI exit code 2, the rest are numerical (3).
  bool is_usage_error() const noexcept {
    return code_ == Errc::syntax_error || code_ == Errc::unknown_identifier ||
           code_ == Errc::unknown_case || code_ == Errc::invalid_override ||
           code_ == Errc::io_error;
  }

 private:
  Errc code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(Errc code, const std::string& what, std::size_t position)
      : Error(code, what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::singular_point: return "SingularPoint";
    case Errc::tolerance_not_met: return "ToleranceNotMet";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_identifier: return "UnknownIdentifier";
    case Errc::non_positive_factor: return "NonPositiveFactor";
    case Errc::x_vanishes: return "XVanishes";
    case Errc::non_biharmonic_input: return "NonBiharmonicInput";
    case Errc::step_failure: return "StepFailure";
    case Errc::inversion_failure: return "InversionFailure";
    case Errc::unknown_case: return "UnknownCase";
    case Errc::invalid_override: return "InvalidOverride";
    case Errc::io_error: return "IOError";
  }
  return "Unknown";
}

}  // namespace biharm
