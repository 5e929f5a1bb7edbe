#pragma once

#include <string>

#include "qslab/scalar_field.hpp"

namespace qslab::expr {

// Compiles a tiny expression over x, y, z into a smooth closure.
// Grammar: + - * / ^ (integer powers), parentheses, numbers, and the
// functions sin, cos, exp, sqrt, abs. Example: "z^2 - 0.5*x*y + sin(z)".
geom::SmoothFn compile(const std::string& source);

}  // namespace qslab::expr
