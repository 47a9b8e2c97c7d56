#pragma once

#include <string>
#include <string_view>

#include "periodet/poly.hpp"

namespace periodet {

/// A parsed input polynomial with the chart checks the pipeline relies on.
struct PolySpec {
  std::string source;
  BivarPoly poly;
  int n = 0;
  bool h0_nonzero = false;    // x^(n+1) coefficient
  bool hn1_nonzero = false;   // y^(n+1) coefficient
  bool sigma_nonzero = false; // Sigma(H) != 0
  cplx sigma;
};

/// Text grammar, whitespace ignored:
///   poly   := sign? term (('+' | '-') term)*
///   term   := factor ('*'? factor)*
///   factor := number | number 'i' | 'i' | 'x' ('^' int)? | 'y' ('^' int)? | '(' poly ')' ('^' int)?
/// Numbers are decimal with optional exponent. A parenthesised factor may be
/// any polynomial, so "(2+3i)*x^2" gives a complex coefficient. Input starting
/// with '[' or '{' is read as JSON: a list of {"i", "j", "re", "im"} terms,
/// optionally wrapped as {"terms": [...]}.
/// Errors: syntax-error with the byte offset; invalid-input for degree < 2.
BivarPoly parse_poly_text(std::string_view text);

PolySpec parse_poly(std::string_view text);

/// Text that parses back to the same coefficients (17 significant digits).
std::string format_poly(const BivarPoly& p);

}  // namespace periodet
