#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qpflow/abdf.hpp"
#include "qpflow/domain.hpp"
#include "qpflow/noise.hpp"

using qpflow::AbdfConfig;
using qpflow::Domain;
using qpflow::NoiseField;
using qpflow::NoiseTable;
using qpflow::ShiftedNoise;
using qpflow::abdf_from_strings;
using qpflow::abdf_step;
using qpflow::activation_record;
using qpflow::validate_abdf;
using qpflow::validate_lambda0;

namespace {

std::vector<std::int8_t> spins_from(const std::string& s) {
  std::vector<std::int8_t> out;
  for (char c : s) out.push_back(c == '+' ? 1 : c == '-' ? -1 : 0);
  return out;
}

// Right-anchor restatement of the activation rule, used as an independent
// oracle: an empty site looks at the nearest non-zero spin to its right at
// distance h and is active iff (+1 anchor, h odd) or (-1 anchor, h even).
// The implementation walks from the left anchor instead; the parity law makes
// the two agree wherever both anchors exist.
std::vector<std::uint8_t> right_anchor_record(const std::vector<std::int8_t>& spins,
                                              const Domain& dom) {
  const std::int64_t n = dom.size();
  std::vector<std::uint8_t> act(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    if (spins[static_cast<std::size_t>(i)] != 0) continue;
    for (std::int64_t h = 1; h <= n; ++h) {
      const std::int64_t j = dom.wrap(i + h);
      const int anchor = spins[static_cast<std::size_t>(j)];
      if (anchor == 0) continue;
      act[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(anchor == 1 ? h % 2 : 1 - h % 2);
      break;
    }
  }
  return act;
}

}  // namespace

TEST_CASE("activation record follows the distance parity of the nearest anchor") {
  // +1 at 0 and -1 at 4 on ring:6: sites at even distance right of the +1 are
  // active, sites at odd distance right of the -1 are active.
  CHECK(activation_record(spins_from("+000-0"), Domain::ring(6)) ==
        std::vector<std::uint8_t>{0, 0, 1, 0, 0, 1});
  CHECK(activation_record(spins_from("+0-0"), Domain::ring(4)) ==
        std::vector<std::uint8_t>{0, 0, 0, 1});
  CHECK_THROWS_AS(activation_record(spins_from("0000"), Domain::ring(4)),
                  std::invalid_argument);
}

TEST_CASE("left-anchor and right-anchor derivations agree on every valid ring state") {
  const Domain dom = Domain::ring(8);
  std::uint64_t checked = 0;
  std::vector<std::int8_t> spins(8, 0);
  for (std::uint64_t code = 0; code < 6561; ++code) {  // all 3^8 vectors
    std::uint64_t c = code;
    for (int i = 0; i < 8; ++i) {
      spins[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(c % 3) - 1;
      c /= 3;
    }
    if (!validate_lambda0(spins, dom).ok) continue;
    ++checked;
    REQUIRE(activation_record(spins, dom) == right_anchor_record(spins, dom));
  }
  CHECK(checked > 100);  // the valid set is not degenerate
}

TEST_CASE("all-zero window activation is pinned by the right tail") {
  // Virtual right anchor +1 (empty tail): odd distances active.
  CHECK(activation_record(spins_from("0000"), Domain::line_window(0, 3, 0, 0)) ==
        std::vector<std::uint8_t>{0, 1, 0, 1});
  // Virtual right anchor -1 (occupied tail): even distances active.
  CHECK(activation_record(spins_from("0000"), Domain::line_window(0, 3, 0, 1)) ==
        std::vector<std::uint8_t>{1, 0, 1, 0});
}

TEST_CASE("sign parity validation accepts the legal gap parities only") {
  const Domain dom = Domain::ring(6);
  CHECK(validate_lambda0(spins_from("+000-0"), dom).ok);
  CHECK(validate_lambda0(spins_from("+0--0+"), dom).ok);

  // Equal signs with an odd gap.
  const auto bad = validate_lambda0(spins_from("+0+000"), dom);
  CHECK_FALSE(bad.ok);
  CHECK(bad.x1 == 0);
  CHECK(bad.x2 == 2);
  CHECK(bad.gap == 1);

  // A lone spin on an even ring fails against its own cyclic gap.
  CHECK_FALSE(validate_lambda0(spins_from("+00000"), dom).ok);
  // The all-zero ring carries no parity data at all.
  CHECK_FALSE(validate_lambda0(spins_from("000000"), dom).ok);

  // Window junction against the virtual right tail spin: +1 at 0 with an
  // empty tail (virtual +1 at 4) leaves an odd gap between equal signs.
  CHECK_FALSE(validate_lambda0(spins_from("+000"), Domain::line_window(0, 3, 0, 0)).ok);
  CHECK(validate_lambda0(spins_from("+000"), Domain::line_window(0, 3, 0, 1)).ok);
  CHECK(validate_lambda0(spins_from("0000"), Domain::line_window(0, 3, 0, 0)).ok);
}

TEST_CASE("config validation ties act and alt_flag to the spins") {
  const Domain dom = Domain::ring(4);
  CHECK(validate_abdf(abdf_from_strings(dom, "+0-0", "0001")).ok);
  CHECK_FALSE(validate_abdf(abdf_from_strings(dom, "+0-0", "0101")).ok);
  CHECK_FALSE(validate_abdf(abdf_from_strings(dom, "+0-0", "0001", 1)).ok);
  CHECK(validate_abdf(abdf_from_strings(dom, "0000", "1010", 1)).ok);
  CHECK(validate_abdf(abdf_from_strings(dom, "0000", "0101", 0)).ok);
  CHECK_FALSE(validate_abdf(abdf_from_strings(dom, "0000", "0101", 1)).ok);
  CHECK_FALSE(validate_abdf(abdf_from_strings(dom, "0000", "0101")).ok);
  // Windows never carry the alternating label.
  const Domain win = Domain::line_window(0, 3, 0, 0);
  CHECK(validate_abdf(abdf_from_strings(win, "0000", "0101")).ok);
  CHECK_FALSE(validate_abdf(abdf_from_strings(win, "0000", "0101", 0)).ok);
}

TEST_CASE("opposite movers meet and annihilate") {
  const AbdfConfig cfg = abdf_from_strings(Domain::ring(4), "+0-0", "0001");
  NoiseTable all_ones(1);
  const AbdfConfig stepped = abdf_step(cfg, all_ones, 1);
  CHECK(spin_string(stepped) == "0000");
  REQUIRE(stepped.alt_flag.has_value());
  CHECK(*stepped.alt_flag == 1);
  CHECK(act_string(stepped) == "1010");
}

TEST_CASE("coins showing 0 freeze the movers in place") {
  const AbdfConfig cfg = abdf_from_strings(Domain::ring(4), "+0-0", "0001");
  NoiseTable all_zeros(0);
  const AbdfConfig stepped = abdf_step(cfg, all_zeros, 1);
  CHECK(spin_string(stepped) == "+0-0");
  CHECK(act_string(stepped) == "0001");
  CHECK_FALSE(stepped.alt_flag.has_value());
}

TEST_CASE("an active site with coin 0 emits a fresh pair out of the vacuum") {
  // Labelled vacuum on ring:4 (alt 0, active sites 1 and 3).  Coins 1 except
  // at site 1, whose k = 1 lets it emit: the left mover lands at 0, the right
  // mover at 2.
  const AbdfConfig vac = abdf_from_strings(Domain::ring(4), "0000", "0101", 0);
  NoiseTable table(1);
  table.set(0, 1, 0);
  const AbdfConfig stepped = abdf_step(vac, table, 1);
  CHECK(spin_string(stepped) == "-0+0");
  CHECK(act_string(stepped) == "0100");
  CHECK_FALSE(stepped.alt_flag.has_value());
}

TEST_CASE("the labelled vacuum persists under all-one coins with a flipped label") {
  const AbdfConfig vac1 = abdf_from_strings(Domain::ring(6), "000000", "101010", 1);
  NoiseTable all_ones(1);
  const AbdfConfig flip = abdf_step(vac1, all_ones, 1);
  CHECK(spin_string(flip) == "000000");
  REQUIRE(flip.alt_flag.has_value());
  CHECK(*flip.alt_flag == 0);

  NoiseTable all_zeros(0);
  const AbdfConfig hold = abdf_step(vac1, all_zeros, 1);
  REQUIRE(hold.alt_flag.has_value());
  CHECK(*hold.alt_flag == 1);
}

TEST_CASE("window step reads the full-line values implied by the tails") {
  // +1 at the left edge, occupied right tail (virtual -1 just outside).
  const Domain win = Domain::line_window(0, 3, 0, 1);
  const AbdfConfig cfg = abdf_from_strings(win, "+000", "0010");
  REQUIRE(validate_abdf(cfg).ok);

  NoiseTable all_ones(1);
  const AbdfConfig moved = abdf_step(cfg, all_ones, 1);
  // The mover advances, a fresh +1 walks in on the left (two holes at the
  // edge imply a virtual +1 at -1) and the tail's -1 walks in on the right.
  CHECK(spin_string(moved) == "++0-");
  CHECK(act_string(moved) == "0000");

  NoiseTable all_zeros(0);
  const AbdfConfig held = abdf_step(cfg, all_zeros, 1);
  CHECK(spin_string(held) == "+000");
  CHECK(act_string(held) == "0010");
}

TEST_CASE("flows compose and restarts obey the shift relation") {
  const Domain dom = Domain::ring(8);
  const NoiseField field(4242);
  const AbdfConfig cfg = abdf_from_strings(dom, "+0-0+0-0", "00010001");
  REQUIRE(validate_abdf(cfg).ok);

  AbdfConfig manual = cfg;
  for (std::int64_t t = 1; t <= 6; ++t) manual = abdf_step(manual, field, t);
  CHECK(abdf_flow(cfg, field, 6) == manual);
  CHECK(abdf_flow(cfg, field, 0) == cfg);

  const AbdfConfig mid = abdf_flow(cfg, field, 2);
  CHECK(abdf_flow_range(mid, field, 2, 6) == manual);
  const ShiftedNoise shifted(field, 2);
  CHECK(abdf_flow(mid, shifted, 4) == manual);
}

TEST_CASE("step rejects invalid configurations and t < 1") {
  const Domain dom = Domain::ring(4);
  const NoiseField field(1);
  const AbdfConfig good = abdf_from_strings(dom, "+0-0", "0001");
  CHECK_THROWS_AS(abdf_step(good, field, 0), std::invalid_argument);
  const AbdfConfig bad = abdf_from_strings(dom, "+0-0", "0101");
  CHECK_THROWS_AS(abdf_step(bad, field, 1), std::invalid_argument);
}

TEST_CASE("string serialization round trips") {
  const Domain dom = Domain::ring(6);
  const AbdfConfig cfg = abdf_from_strings(dom, "+000-0", "001001");
  CHECK(spin_string(cfg) == "+000-0");
  CHECK(act_string(cfg) == "001001");
  const AbdfConfig back = abdf_from_strings(dom, spin_string(cfg), act_string(cfg));
  CHECK(back == cfg);
  CHECK_THROWS_AS(abdf_from_strings(dom, "+000-", "001001"), std::invalid_argument);
  CHECK_THROWS_AS(abdf_from_strings(dom, "+000-x", "001001"), std::invalid_argument);
  CHECK_THROWS_AS(abdf_from_strings(dom, "+000-0", "00100x"), std::invalid_argument);
}
