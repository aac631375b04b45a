#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "bfnorm/core.hpp"

namespace bfnorm {

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/*! \brief Parses ANF text such as "x1*x3 + x2*x4 + x5".

  Terms are joined by '+'; a term is '1', '0', or factors x<i> joined by '*'.
  Whitespace is ignored, repeated factors collapse (x1*x1 = x1) and repeated
  terms cancel.
*/
Anf parse_anf(std::string_view text, int m);

/// Canonical text: decreasing degree, then lexicographic order of variable lists.
std::string format_anf(const Anf& a);

/*! Truth table as hex: byte j holds bits 8j..8j+7 with bit 8j least
    significant, two lowercase digits per byte, byte 0 first.  Tables with
    fewer than 8 bits occupy one byte. */
std::string to_hex(const BoolFun& f);
BoolFun from_hex(std::string_view text, int m);

/// Number of variables implied by a hex string length (>= 3 when ambiguous).
int infer_vars_from_hex(std::string_view text);

/// Accepts either ANF text or a hex truth table ("hex:" prefix forces hex).
BoolFun parse_function(std::string_view text, int m, bool hex);

}  // namespace bfnorm
