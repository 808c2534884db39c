#pragma once

#include <string_view>

#include "steinhaus/group.hpp"

namespace steinhaus {

// Interval literals: bracket, endpoint, comma, endpoint, bracket. Brackets
// [ ] close the endpoint, ( ) leave it open. Endpoints are rationals ("0",
// "-1/2") or group elements ("g:{0:-13}", "g:{}" for zero). Whitespace is
// allowed around tokens. Throws ParseError with the offending position;
// the parsed interval is validated nonempty against the basis, extending it
// to cover any endpoint indices.
RealInterval parse_interval(std::string_view text, BasisSpec& basis);

}  // namespace steinhaus
