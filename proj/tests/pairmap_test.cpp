#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qpflow/abdf.hpp"
#include "qpflow/domain.hpp"
#include "qpflow/pairmap.hpp"
#include "qpflow/tasep.hpp"

using qpflow::AbdfConfig;
using qpflow::AlternatingSegment;
using qpflow::Domain;
using qpflow::SegmentList;
using qpflow::TasepConfig;
using qpflow::maximal_alternating_segments;
using qpflow::pair_forward;
using qpflow::pair_inverse;
using qpflow::tasep_from_string;
using qpflow::validate_abdf;

namespace {

TasepConfig from_mask(const Domain& dom, std::uint64_t mask) {
  TasepConfig cfg;
  cfg.domain = dom;
  cfg.occ.resize(static_cast<std::size_t>(dom.size()));
  for (std::int64_t i = 0; i < dom.size(); ++i)
    cfg.occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((mask >> i) & 1);
  return cfg;
}

// Inverse oracle using the one-step recurrence eta(x+1) = 1 - eta(x) - spin(x)
// walked from a decoded anchor, instead of the segment-fill formula the
// implementation uses.  The anchor site's occupancy is forced by its spin
// (+1 sits on two holes, -1 on two particles); vacua fall back to the label.
TasepConfig oracle_inverse(const AbdfConfig& cfg) {
  const Domain& dom = cfg.domain;
  const std::int64_t n = dom.size();
  TasepConfig out;
  out.domain = dom;
  out.occ.assign(static_cast<std::size_t>(n), 0);

  std::int64_t anchor = -1;
  for (std::int64_t i = 0; i < n && anchor < 0; ++i)
    if (cfg.spins[static_cast<std::size_t>(i)] != 0) anchor = i;

  if (anchor < 0) {
    if (dom.is_ring()) {
      const int alt = cfg.alt_flag.value();
      for (std::int64_t i = 0; i < n; ++i)
        out.occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i + alt) % 2);
    } else {
      // Walk leftward from the declared right tail.
      int next = dom.tail_right;
      for (std::int64_t i = n - 1; i >= 0; --i) {
        out.occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(1 - next);
        next = 1 - next;
      }
    }
    return out;
  }

  out.occ[static_cast<std::size_t>(anchor)] =
      cfg.spins[static_cast<std::size_t>(anchor)] == 1 ? 0 : 1;
  if (dom.is_ring()) {
    for (std::int64_t k = 0; k < n - 1; ++k) {
      const std::int64_t x = dom.wrap(anchor + k);
      const std::int64_t next = dom.wrap(anchor + k + 1);
      out.occ[static_cast<std::size_t>(next)] = static_cast<std::uint8_t>(
          1 - out.occ[static_cast<std::size_t>(x)] - cfg.spins[static_cast<std::size_t>(x)]);
    }
  } else {
    for (std::int64_t i = anchor; i + 1 < n; ++i)
      out.occ[static_cast<std::size_t>(i + 1)] = static_cast<std::uint8_t>(
          1 - out.occ[static_cast<std::size_t>(i)] - cfg.spins[static_cast<std::size_t>(i)]);
    for (std::int64_t i = anchor; i > 0; --i)
      out.occ[static_cast<std::size_t>(i - 1)] = static_cast<std::uint8_t>(
          1 - out.occ[static_cast<std::size_t>(i)] - cfg.spins[static_cast<std::size_t>(i - 1)]);
  }
  return out;
}

}  // namespace

TEST_CASE("worked window example: occupancies to spins and activation") {
  const Domain win = Domain::line_window(2, 15, 0, 0);
  const TasepConfig eta = tasep_from_string(win, "00101001110100");
  const AbdfConfig img = pair_forward(eta);
  CHECK(spin_string(img) == "+0000+0--000++");
  CHECK(act_string(img) == "00101000010100");
  CHECK_FALSE(img.alt_flag.has_value());
  CHECK(validate_abdf(img).ok);
  CHECK(pair_inverse(img) == eta);
}

TEST_CASE("two particles behind two holes map to one right and one left mover") {
  const Domain dom = Domain::ring(4);
  const TasepConfig eta = tasep_from_string(dom, "0011");
  const AbdfConfig img = pair_forward(eta);
  CHECK(spin_string(img) == "+0-0");
  CHECK(act_string(img) == "0001");
  CHECK(pair_inverse(img) == eta);
}

TEST_CASE("alternating occupancies map to the labelled vacua") {
  const Domain dom = Domain::ring(6);
  const AbdfConfig vac0 = pair_forward(tasep_from_string(dom, "010101"));
  CHECK(spin_string(vac0) == "000000");
  REQUIRE(vac0.alt_flag.has_value());
  CHECK(*vac0.alt_flag == 0);
  CHECK(act_string(vac0) == "010101");

  const AbdfConfig vac1 = pair_forward(tasep_from_string(dom, "101010"));
  REQUIRE(vac1.alt_flag.has_value());
  CHECK(*vac1.alt_flag == 1);
  CHECK(act_string(vac1) == "101010");

  CHECK(occupancy_string(pair_inverse(vac0)) == "010101");
  CHECK(occupancy_string(pair_inverse(vac1)) == "101010");
}

TEST_CASE("an all-zero window is pinned by its right tail") {
  const AbdfConfig img = pair_forward(
      tasep_from_string(Domain::line_window(0, 3, 0, 0), "0101"));
  CHECK(spin_string(img) == "0000");
  CHECK(act_string(img) == "0101");
  CHECK_FALSE(img.alt_flag.has_value());
  CHECK(occupancy_string(pair_inverse(img)) == "0101");
}

TEST_CASE("forward then inverse is the identity for every ring occupancy") {
  for (std::int64_t L : {4, 6, 8, 10, 12}) {
    const Domain dom = Domain::ring(L);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << L); ++mask) {
      const TasepConfig eta = from_mask(dom, mask);
      const AbdfConfig img = pair_forward(eta);
      REQUIRE(validate_abdf(img).ok);
      REQUIRE(pair_inverse(img) == eta);
    }
  }
}

TEST_CASE("forward then inverse is the identity on windows for every tail combination") {
  for (int tl = 0; tl <= 1; ++tl)
    for (int tr = 0; tr <= 1; ++tr) {
      const Domain dom = Domain::line_window(-2, 2, tl, tr);
      for (std::uint64_t mask = 0; mask < 32; ++mask) {
        const TasepConfig eta = from_mask(dom, mask);
        const AbdfConfig img = pair_forward(eta);
        REQUIRE(validate_abdf(img).ok);
        REQUIRE(pair_inverse(img) == eta);
      }
    }
}

TEST_CASE("segment-fill inverse agrees with the anchor-walk recurrence oracle") {
  const Domain dom = Domain::ring(10);
  for (std::uint64_t mask = 0; mask < 1024; ++mask) {
    const AbdfConfig img = pair_forward(from_mask(dom, mask));
    REQUIRE(pair_inverse(img) == oracle_inverse(img));
  }
  const Domain win = Domain::line_window(0, 5, 1, 0);
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    const AbdfConfig img = pair_forward(from_mask(win, mask));
    REQUIRE(pair_inverse(img) == oracle_inverse(img));
  }
}

TEST_CASE("pair images satisfy act(x) = eta(x)(1 - eta(x+1)) site by site") {
  const Domain dom = Domain::ring(8);
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    const TasepConfig eta = from_mask(dom, mask);
    const AbdfConfig img = pair_forward(eta);
    for (std::int64_t x = 0; x < 8; ++x) {
      const int here = eta.occ[static_cast<std::size_t>(x)];
      const int right = eta.occ[static_cast<std::size_t>(dom.wrap(x + 1))];
      REQUIRE(static_cast<int>(img.act[static_cast<std::size_t>(x)]) == here * (1 - right));
    }
  }
}

TEST_CASE("maximal alternating segments carry the gap parities") {
  const Domain dom = Domain::ring(6);
  const SegmentList list =
      maximal_alternating_segments({1, 0, -1, -1, 0, 1}, dom);
  REQUIRE(list.segments.size() == 4);
  CHECK(list.segments[0] == AlternatingSegment{0, 2, 1});
  CHECK(list.segments[1] == AlternatingSegment{2, 3, 0});
  CHECK(list.segments[2] == AlternatingSegment{3, 5, 1});
  CHECK(list.segments[3] == AlternatingSegment{5, 0, 0});
  CHECK_FALSE(list.left_halfline_end.has_value());
  CHECK_FALSE(list.right_halfline_start.has_value());
  for (const AlternatingSegment& seg : list.segments) {
    const int s1 = seg.x1 == 0 || seg.x1 == 5 ? 1 : -1;
    const int s2 = seg.x2 == 0 || seg.x2 == 5 ? 1 : -1;
    CHECK(seg.n % 2 == (s1 == s2 ? 0 : 1));
  }

  CHECK_THROWS_AS(maximal_alternating_segments({0, 0, 0, 0, 0, 0}, dom),
                  std::invalid_argument);
}

TEST_CASE("window segment lists expose the half lines") {
  const Domain win = Domain::line_window(2, 15, 0, 0);
  const AbdfConfig img = pair_forward(tasep_from_string(win, "00101001110100"));
  const SegmentList list = maximal_alternating_segments(img.spins, win);
  REQUIRE(list.segments.size() == 5);
  CHECK(list.segments[0] == AlternatingSegment{2, 7, 4});
  CHECK(list.segments[1] == AlternatingSegment{7, 9, 1});
  CHECK(list.segments[2] == AlternatingSegment{9, 10, 0});
  CHECK(list.segments[3] == AlternatingSegment{10, 14, 3});
  CHECK(list.segments[4] == AlternatingSegment{14, 15, 0});
  REQUIRE(list.left_halfline_end.has_value());
  REQUIRE(list.right_halfline_start.has_value());
  CHECK(*list.left_halfline_end == 2);
  CHECK(*list.right_halfline_start == 15);
}

TEST_CASE("inverse rejects data that is not a pair image") {
  const Domain dom = Domain::ring(4);
  AbdfConfig bad;
  bad.domain = dom;
  bad.spins = {1, 0, 1, 0};  // equal signs with odd cyclic gaps
  bad.act = {0, 0, 0, 0};
  CHECK_THROWS_AS(pair_inverse(bad), std::invalid_argument);

  AbdfConfig vacuum_without_label;
  vacuum_without_label.domain = dom;
  vacuum_without_label.spins = {0, 0, 0, 0};
  vacuum_without_label.act = {0, 1, 0, 1};
  CHECK_THROWS_AS(pair_inverse(vacuum_without_label), std::invalid_argument);
}
