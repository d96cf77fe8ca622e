#pragma once

#include <complex>
#include <string>

#include "biotf/rational_fn.hpp"

namespace biotf {

// Fixed textual grammar shared by certificates and CLI output:
//   rationalfn := '(' poly ')' '/' '(' poly ')'
//   poly       := ['-'] term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := rational | param ['^' nat] | 's' ['^' nat] | '(' poly ')'
//   rational   := nat ['/' nat]
// Powers of s print as s^k (k >= 2), parameters by name, rationals as p/q.
// Everything rendered here parses back via expr_parse.hpp.

std::string render(const ParamPoly& p);
std::string render(const SPoly& p);
std::string render(const RationalFn& f);

// %.9g, the fixed significand width used in CSV output and reports.
std::string render(double x);
std::string render(std::complex<double> z);

}  // namespace biotf
