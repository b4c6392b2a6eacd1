#ifndef QPFLOW_DOMAIN_HPP
#define QPFLOW_DOMAIN_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qpflow {

enum class DomainKind { Ring, LineWindow };

// Finite site domain shared by every lattice model in this library.
//
// Ring: sites 0..L-1 with periodic neighbours, L even and >= 4.  This is the
// exact mode; every cross-model identity holds on rings with no caveats.
//
// LineWindow: the integer window [x_min, x_max] cut out of the full line,
// together with a declared constant occupancy on each semi-infinite tail
// (tail_left for x < x_min, tail_right for x > x_max).  Windows are meant for
// static operations and short runs: the tails are frozen, so once activity
// reaches a window edge the simulation is an approximation of the full-line
// dynamics.  Exact-equality checks are therefore only run on rings.
struct Domain {
  DomainKind kind = DomainKind::Ring;
  std::int64_t ring_size = 0;                 // Ring only
  std::int64_t x_min = 0, x_max = 0;          // LineWindow only, inclusive
  int tail_left = 0, tail_right = 0;          // LineWindow only, in {0,1}

  static Domain ring(std::int64_t size);
  static Domain line_window(std::int64_t x_min, std::int64_t x_max,
                            int tail_left, int tail_right);

  bool is_ring() const { return kind == DomainKind::Ring; }

  // Number of stored sites.
  std::int64_t size() const {
    return is_ring() ? ring_size : (x_max - x_min + 1);
  }

  // Absolute site label of a storage index and back.
  std::int64_t site(std::int64_t index) const {
    return is_ring() ? index : x_min + index;
  }
  std::int64_t index_of(std::int64_t site) const {
    return is_ring() ? wrap(site) : site - x_min;
  }

  bool contains(std::int64_t site) const {
    if (is_ring()) return site >= 0 && site < ring_size;
    return site >= x_min && site <= x_max;
  }

  // Ring: reduce any integer into [0, L).  LineWindow: identity.
  std::int64_t wrap(std::int64_t site) const {
    if (!is_ring()) return site;
    std::int64_t m = site % ring_size;
    if (m < 0) m += ring_size;
    return m;
  }

  friend bool operator==(const Domain& a, const Domain& b) {
    if (a.kind != b.kind) return false;
    if (a.is_ring()) return a.ring_size == b.ring_size;
    return a.x_min == b.x_min && a.x_max == b.x_max &&
           a.tail_left == b.tail_left && a.tail_right == b.tail_right;
  }
  friend bool operator!=(const Domain& a, const Domain& b) { return !(a == b); }

  std::string describe() const;
};

// Parses "ring:L" or "line:x_min:x_max:TL TR" ("line:2:15:10" means
// tail_left=1, tail_right=0).  Throws std::invalid_argument on junk.
Domain parse_domain(const std::string& text);

}  // namespace qpflow

#endif  // QPFLOW_DOMAIN_HPP
