#include "doctest.h"

#include <stdexcept>

#include "qpflow/domain.hpp"

using qpflow::Domain;
using qpflow::parse_domain;

TEST_CASE("ring factory enforces even size >= 4") {
  const Domain d = Domain::ring(8);
  CHECK(d.is_ring());
  CHECK(d.ring_size == 8);
  CHECK(d.size() == 8);
  CHECK_THROWS_AS(Domain::ring(2), std::invalid_argument);
  CHECK_THROWS_AS(Domain::ring(7), std::invalid_argument);
  CHECK_THROWS_AS(Domain::ring(0), std::invalid_argument);
  CHECK_THROWS_AS(Domain::ring(-4), std::invalid_argument);
}

TEST_CASE("line_window factory validates bounds and tails") {
  const Domain d = Domain::line_window(2, 15, 1, 0);
  CHECK_FALSE(d.is_ring());
  CHECK(d.size() == 14);
  CHECK(d.x_min == 2);
  CHECK(d.x_max == 15);
  CHECK(d.tail_left == 1);
  CHECK(d.tail_right == 0);
  CHECK_THROWS_AS(Domain::line_window(5, 4, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Domain::line_window(0, 3, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(Domain::line_window(0, 3, 0, -1), std::invalid_argument);
}

TEST_CASE("ring wrap reduces any integer into [0, L)") {
  const Domain d = Domain::ring(6);
  CHECK(d.wrap(0) == 0);
  CHECK(d.wrap(5) == 5);
  CHECK(d.wrap(6) == 0);
  CHECK(d.wrap(13) == 1);
  CHECK(d.wrap(-1) == 5);
  CHECK(d.wrap(-6) == 0);
  CHECK(d.wrap(-13) == 5);
}

TEST_CASE("site and index_of are inverse on both kinds") {
  const Domain ring = Domain::ring(10);
  for (std::int64_t i = 0; i < ring.size(); ++i) {
    CHECK(ring.site(i) == i);
    CHECK(ring.index_of(ring.site(i)) == i);
  }
  // Out-of-range ring sites wrap back into storage.
  CHECK(ring.index_of(-1) == 9);
  CHECK(ring.index_of(10) == 0);

  const Domain win = Domain::line_window(-3, 4, 0, 1);
  CHECK(win.size() == 8);
  for (std::int64_t i = 0; i < win.size(); ++i) {
    CHECK(win.site(i) == -3 + i);
    CHECK(win.index_of(win.site(i)) == i);
  }
}

TEST_CASE("contains covers stored sites only") {
  const Domain ring = Domain::ring(4);
  CHECK(ring.contains(0));
  CHECK(ring.contains(3));
  CHECK_FALSE(ring.contains(4));
  CHECK_FALSE(ring.contains(-1));

  const Domain win = Domain::line_window(2, 5, 0, 0);
  CHECK(win.contains(2));
  CHECK(win.contains(5));
  CHECK_FALSE(win.contains(1));
  CHECK_FALSE(win.contains(6));
}

TEST_CASE("describe and parse_domain round trip") {
  CHECK(Domain::ring(16).describe() == "ring:16");
  CHECK(Domain::line_window(2, 15, 1, 0).describe() == "line:2:15:10");
  CHECK(parse_domain("ring:16") == Domain::ring(16));
  CHECK(parse_domain("line:2:15:10") == Domain::line_window(2, 15, 1, 0));
  CHECK(parse_domain("line:-4:4:01") == Domain::line_window(-4, 4, 0, 1));
  CHECK(parse_domain(Domain::ring(64).describe()) == Domain::ring(64));
}

TEST_CASE("parse_domain rejects junk") {
  CHECK_THROWS_AS(parse_domain(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("ring"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("ring:abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("ring:5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("line:0:5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("line:0:5:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("line:0:5:012"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("torus:8"), std::invalid_argument);
}
