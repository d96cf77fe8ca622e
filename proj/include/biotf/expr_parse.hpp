#pragma once

#include <string>

#include "biotf/rational_fn.hpp"

namespace biotf {

// Parsers for the rendering grammar in render.hpp. parse_* consume the whole
// input and throw biotf::Error with an offset on malformed text. The name "s"
// is reserved for the Laplace variable and cannot be a parameter.

SPoly parse_spoly(const std::string& text);

// '(' poly ')' '/' '(' poly ')'; the result is canonicalized by
// RationalFn::make, so parse(render(f)) == f for canonical f.
RationalFn parse_rational_fn(const std::string& text);

}  // namespace biotf
