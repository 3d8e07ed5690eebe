// Exact parsing of angles given as symbolic multiples of pi ("pi/12", "2pi",
// "3pi/4", "-pi") or as plain decimal radians ("0.5").
#pragma once

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace drops {

namespace detail {

inline double parse_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw std::invalid_argument("trailing characters in number: " + s);
  return v;
}

}  // namespace detail

// grammar: [+|-] [coefficient] ["pi"] ["/" divisor]; at least one of
// coefficient or "pi" must be present
inline double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty angle");

  double sign = 1.0;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    if (s[pos] == '-') sign = -1.0;
    ++pos;
  }

  size_t num_end = pos;
  while (num_end < s.size() && (std::isdigit(static_cast<unsigned char>(s[num_end])) || s[num_end] == '.'))
    ++num_end;
  double coefficient = 1.0;
  bool have_coefficient = num_end > pos;
  if (have_coefficient) coefficient = detail::parse_decimal(s.substr(pos, num_end - pos));
  pos = num_end;

  bool have_pi = false;
  if (s.compare(pos, 2, "pi") == 0) {
    have_pi = true;
    pos += 2;
  }

  double divisor = 1.0;
  if (pos < s.size() && s[pos] == '/') {
    divisor = detail::parse_decimal(s.substr(pos + 1));
    if (divisor == 0.0) throw std::invalid_argument("zero divisor in angle: " + text);
    pos = s.size();
  }

  if (pos != s.size() || (!have_coefficient && !have_pi))
    throw std::invalid_argument("cannot parse angle: " + text);

  return sign * coefficient * (have_pi ? std::numbers::pi : 1.0) / divisor;
}

}  // namespace drops
