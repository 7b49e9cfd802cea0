#include "conicdet/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "conicdet/error.hpp"

namespace conicdet {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorKind::invalid_argument, "not a number: '" + std::string(whole) + "'");
  return v;
}

std::int64_t pow10(int e) {
  if (e > 18) fail(ErrorKind::invalid_argument, "too many decimal digits");
  std::int64_t p = 1;
  while (e-- > 0) p *= 10;
  return p;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  int exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<int>(parse_int(s.substr(e + 1), whole));
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      fail(ErrorKind::invalid_argument, "not a number: '" + std::string(whole) + "'");
    }
  }
  if (digits.empty()) fail(ErrorKind::invalid_argument, "not a number: '" + std::string(whole) + "'");
  std::int64_t mantissa = parse_int(digits, whole);
  int scale = frac_digits - exponent;
  Rational r = scale >= 0 ? Rational(mantissa, pow10(scale)) : Rational(mantissa * pow10(-scale));
  return negative ? -r : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) fail(ErrorKind::invalid_argument, "empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(s.substr(0, slash)), text);
    Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
    if (den == Rational(0)) fail(ErrorKind::invalid_argument, "zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(s, text);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  while (true) {
    auto comma = text.find(',');
    out.push_back(parse_rational(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::vector<double> to_doubles(const std::vector<Rational>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

}  // namespace conicdet
