#pragma once

#include <string>

#include "projdyn/hpoly.hpp"
#include "projdyn/ratmap.hpp"

namespace projdyn {

// Parses one polynomial expression over x,y,z with integer, rational and
// Gaussian (i) coefficients and operators + - * ^ and parentheses. The
// result must be homogeneous (InvalidLift otherwise); syntax errors carry
// the offending position (ParseError).
HPoly parse_hpoly(const std::string& text);

// Parses "[expr : expr : expr]" and builds the reduced map. Components of
// unequal degree raise InvalidLift.
RationalMap parse_map(const std::string& text);

}  // namespace projdyn
