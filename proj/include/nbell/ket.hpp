#pragma once

#include <string>
#include <string_view>

#include "nbell/states.hpp"

namespace nbell {

struct ParsedKet {
  PureState state;
  Real input_norm = 1.0;
  bool renormalized = false;  // input norm was off by more than kNormTolerance
};

/// Parses sums of kets such as "|000> + |111>" or "(1+1i)*|0> - 0.5|1>".
///
///   expr := term (("+"|"-") term)*        (a leading sign is accepted)
///   term := coef? "|" bits ">"
///   coef := number | "(" number ("+"|"-") number "i" ")", optionally followed by "*"
///
/// Whitespace is ignored, repeated bitstrings are summed and the result is normalized.
ParsedKet parse_ket(std::string_view expression);

/// Inverse of parse_ket up to round-off: every non-zero amplitude as "(re+imi)*|bits>".
std::string render_ket(const PureState& state);

}  // namespace nbell
