#pragma once

#include <string>

#include "bfnorm/core.hpp"
#include "bfnorm/text_format.hpp"

namespace bfnorm::testing {

// Degree-6 function on 8 variables, printed form equivalent to Dubuc's
// non-normal example.
inline const std::string kDubuc =
    "x2*x3*x4*x5*x7*x8 + x2*x3*x4*x5*x8 + x2*x3*x4*x7*x8 + x2*x3*x4*x6 + x2*x3*x5*x6"
    " + x2*x3*x4*x8 + x2*x4*x6*x8 + x2*x5*x7*x8 + x1*x2*x3 + x3*x4*x5 + x2*x5*x6 + x2*x4*x7"
    " + x3*x4*x7 + x4*x5*x8 + x3*x6*x8 + x3*x7*x8 + x2*x3 + x2*x5 + x3*x5 + x4*x6 + x2*x7"
    " + x3*x8 + x7*x8 + x1 + x2";

// Member of B~(5,7,7) with 6-degree 5.
inline const std::string kH = "x1*x2*x3*x4*x5*x6 + x2*x3*x4*x5*x7 + x1*x3*x4*x6*x7 + x1*x2*x5*x6*x7";

inline const std::string kQuadric5 = "x1*x3 + x2*x4 + x5";
inline const std::string kQuadric7 = "x1*x4 + x2*x5 + x3*x6 + x7";
inline const std::string kBent8 = "x1*x2 + x3*x4 + x5*x6 + x7*x8";

inline BoolFun fn(const std::string& anf, int m) { return anf_to_truth_table(parse_anf(anf, m)); }

}  // namespace bfnorm::testing
