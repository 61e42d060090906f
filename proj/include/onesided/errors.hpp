#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace onesided {

enum class Errc {
  negative_discriminant,
  zero_denominator,
  mixed_radicand,
  invalid_term,
  insufficient_terms,
  no_tail,
  undecided,
  exactness_required,
  not_quadratic,
  no_limit_structure,
  floor_undecided,
  boundary_undecided,
  parse_error,
  invalid_argument,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::negative_discriminant: return "NegativeDiscriminant";
    case Errc::zero_denominator: return "ZeroDenominator";
    case Errc::mixed_radicand: return "MixedRadicand";
    case Errc::invalid_term: return "InvalidTerm";
    case Errc::insufficient_terms: return "InsufficientTerms";
    case Errc::no_tail: return "NoTail";
    case Errc::undecided: return "Undecided";
    case Errc::exactness_required: return "ExactnessRequired";
    case Errc::not_quadratic: return "NotQuadratic";
    case Errc::no_limit_structure: return "NoLimitStructure";
    case Errc::floor_undecided: return "FloorUndecided";
    case Errc::boundary_undecided: return "BoundaryUndecided";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// The single exception type thrown by the library; `code()` tells callers
/// which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace onesided
