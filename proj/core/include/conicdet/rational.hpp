#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace conicdet {

using Rational = boost::rational<std::int64_t>;

/// Parses "3", "-0.25", "1/3" or "1.5e-1" exactly. Throws invalid-argument.
Rational parse_rational(std::string_view text);

/// Comma-separated list of parse_rational entries.
std::vector<Rational> parse_rational_list(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::vector<double> to_doubles(const std::vector<Rational>& values);

}  // namespace conicdet
