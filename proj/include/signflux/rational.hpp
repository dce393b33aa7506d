#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace signflux {

using Rational = boost::rational<std::int64_t>;

// Accepts "p/q", integers, and terminating decimals ("0.76" -> 19/25).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace signflux
