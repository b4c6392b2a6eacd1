#ifndef QPFLOW_PAIRMAP_HPP
#define QPFLOW_PAIRMAP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qpflow/abdf.hpp"
#include "qpflow/tasep.hpp"

namespace qpflow {

// Maximal run [x1, x2] between consecutive non-zero spins: spins(x1) and
// spins(x2) are non-zero, the n sites strictly between them are zero.  The
// parity law ties n to the endpoint signs: equal signs force n even, opposite
// signs force n odd.
struct AlternatingSegment {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;
  std::int64_t n = 0;

  bool operator==(const AlternatingSegment& o) const {
    return x1 == o.x1 && x2 == o.x2 && n == o.n;
  }
};

struct SegmentList {
  std::vector<AlternatingSegment> segments;
  // Window decompositions also carry two half lines: everything left of the
  // first non-zero spin and everything right of the last one.  On rings the
  // list is purely cyclic and these stay empty.
  std::optional<std::int64_t> left_halfline_end;    // first non-zero spin
  std::optional<std::int64_t> right_halfline_start; // last non-zero spin
};

// Decomposition into maximal alternating segments, anchored at the first
// non-zero spin (cyclic order on rings, left-to-right on windows).  Throws
// std::invalid_argument for identically-zero spins.
SegmentList maximal_alternating_segments(const std::vector<std::int8_t>& spins,
                                         const Domain& domain);

// Occupancies -> spins and activation:
//
//   spins(x) = 1 - eta(x) - eta(x+1)
//
// (the right neighbour read at the window edge uses the declared tail), with
// act the activation record, or the alternating label eta(0) when the spins
// vanish identically on a ring.
AbdfConfig pair_forward(const TasepConfig& cfg);

// Inverse map.  A non-zero spin anchors its segment (+1 means two empty
// sites, -1 two occupied ones) and the interior fills by
//
//   eta(x1+j+1) = (1+(-1)^j)/2 - (-1)^j eta(x1) - sum_{k=0..j} (-1)^k spins(x1+j-k),
//
// segment by segment.  The identically-zero ring maps to the alternating
// occupancy selected by alt_flag; an all-zero window is pinned by its right
// tail.  Ring closure (the filled occupancy reproducing every spin, wrap
// included) is asserted, not assumed; violations throw std::invalid_argument.
TasepConfig pair_inverse(const AbdfConfig& cfg);

}  // namespace qpflow

#endif  // QPFLOW_PAIRMAP_HPP
