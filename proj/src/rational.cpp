#include "qpflow/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace qpflow {
namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::int64_t parse_digits(const std::string& s, const std::string& original) {
  if (!all_digits(s))
    throw std::invalid_argument("parse_rational: bad literal '" + original + "'");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size())
    throw std::invalid_argument("parse_rational: out of range '" + original + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string::npos)
    throw std::invalid_argument("parse_rational: empty literal");
  std::string s = text.substr(begin, end - begin + 1);

  std::int64_t sign = 1;
  if (s[0] == '+' || s[0] == '-') {
    if (s[0] == '-') sign = -1;
    s.erase(s.begin());
  }

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::int64_t num = parse_digits(s.substr(0, slash), text);
    const std::int64_t den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator '" + text + "'");
    return Rational(sign * num, den);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string int_part = s.substr(0, dot);
    const std::string frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("parse_rational: bad literal '" + text + "'");
    std::int64_t num = int_part.empty() ? 0 : parse_digits(int_part, text);
    std::int64_t den = 1;
    for (char c : frac_part) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("parse_rational: bad literal '" + text + "'");
      num = num * 10 + (c - '0');
      den *= 10;
    }
    return Rational(sign * num, den);
  }

  return Rational(sign * parse_digits(s, text));
}

}  // namespace qpflow
