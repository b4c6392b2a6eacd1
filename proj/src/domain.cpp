#include "qpflow/domain.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace qpflow {
namespace {

std::int64_t parse_int(const std::string& s, const std::string& original) {
  if (s.empty()) throw std::invalid_argument("parse_domain: bad spec '" + original + "'");
  std::size_t at = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (at == s.size()) throw std::invalid_argument("parse_domain: bad spec '" + original + "'");
  for (std::size_t i = at; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("parse_domain: bad spec '" + original + "'");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size())
    throw std::invalid_argument("parse_domain: out of range '" + original + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    if (at == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

}  // namespace

Domain Domain::ring(std::int64_t size) {
  if (size < 4 || size % 2 != 0)
    throw std::invalid_argument("Domain::ring: size must be even and >= 4, got " +
                                std::to_string(size));
  Domain d;
  d.kind = DomainKind::Ring;
  d.ring_size = size;
  return d;
}

Domain Domain::line_window(std::int64_t x_min, std::int64_t x_max, int tail_left,
                           int tail_right) {
  if (x_max < x_min)
    throw std::invalid_argument("Domain::line_window: x_max < x_min");
  if ((tail_left != 0 && tail_left != 1) || (tail_right != 0 && tail_right != 1))
    throw std::invalid_argument("Domain::line_window: tails must be 0 or 1");
  Domain d;
  d.kind = DomainKind::LineWindow;
  d.x_min = x_min;
  d.x_max = x_max;
  d.tail_left = tail_left;
  d.tail_right = tail_right;
  return d;
}

std::string Domain::describe() const {
  if (is_ring()) return "ring:" + std::to_string(ring_size);
  return "line:" + std::to_string(x_min) + ":" + std::to_string(x_max) + ":" +
         std::to_string(tail_left) + std::to_string(tail_right);
}

Domain parse_domain(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "ring")
    return Domain::ring(parse_int(parts[1], text));
  if (parts.size() == 4 && parts[0] == "line") {
    const std::string& tails = parts[3];
    if (tails.size() != 2 || (tails[0] != '0' && tails[0] != '1') ||
        (tails[1] != '0' && tails[1] != '1'))
      throw std::invalid_argument("parse_domain: tails must be two 0/1 chars in '" + text + "'");
    return Domain::line_window(parse_int(parts[1], text), parse_int(parts[2], text),
                               tails[0] - '0', tails[1] - '0');
  }
  throw std::invalid_argument("parse_domain: expected ring:L or line:x_min:x_max:TLTR, got '" +
                              text + "'");
}

}  // namespace qpflow
