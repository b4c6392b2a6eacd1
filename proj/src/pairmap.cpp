#include "qpflow/pairmap.hpp"

#include <stdexcept>
#include <string>

namespace qpflow {
namespace {

std::vector<std::int64_t> nonzero_sites(const std::vector<std::int8_t>& spins,
                                        const Domain& domain) {
  std::vector<std::int64_t> sites;
  for (std::int64_t i = 0; i < domain.size(); ++i)
    if (spins[static_cast<std::size_t>(i)] != 0) sites.push_back(domain.site(i));
  return sites;
}

}  // namespace

SegmentList maximal_alternating_segments(const std::vector<std::int8_t>& spins,
                                         const Domain& domain) {
  if (static_cast<std::int64_t>(spins.size()) != domain.size())
    throw std::invalid_argument(
        "maximal_alternating_segments: spin size does not match domain");
  const std::vector<std::int64_t> sites = nonzero_sites(spins, domain);
  if (sites.empty())
    throw std::invalid_argument(
        "maximal_alternating_segments: identically-zero spins");

  SegmentList list;
  if (domain.is_ring()) {
    const std::int64_t L = domain.ring_size;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const std::int64_t x1 = sites[i];
      const std::int64_t x2 = sites[(i + 1) % sites.size()];
      list.segments.push_back({x1, x2, ((x2 - x1 - 1) % L + L) % L});
    }
    return list;
  }
  for (std::size_t i = 0; i + 1 < sites.size(); ++i)
    list.segments.push_back({sites[i], sites[i + 1], sites[i + 1] - sites[i] - 1});
  list.left_halfline_end = sites.front();
  list.right_halfline_start = sites.back();
  return list;
}

AbdfConfig pair_forward(const TasepConfig& cfg) {
  validate(cfg);
  const Domain& dom = cfg.domain;
  const std::int64_t n = dom.size();

  auto occ_at = [&](std::int64_t s) -> int {
    if (dom.is_ring()) return cfg.occ[static_cast<std::size_t>(dom.wrap(s))];
    if (s > dom.x_max) return dom.tail_right;
    return cfg.occ[static_cast<std::size_t>(dom.index_of(s))];
  };

  AbdfConfig out;
  out.domain = dom;
  out.spins.resize(static_cast<std::size_t>(n));
  bool any_nonzero = false;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t x = dom.site(i);
    const int s = 1 - occ_at(x) - occ_at(x + 1);
    out.spins[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(s);
    any_nonzero = any_nonzero || s != 0;
  }

  if (!any_nonzero && dom.is_ring()) {
    // Alternating occupancy: the label is the occupancy of site 0 and the
    // activation equals the occupancy itself.
    const int alt = cfg.occ[0];
    out.alt_flag = alt;
    out.act.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
      out.act[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i + alt) % 2);
    return out;
  }

  out.act = activation_record(out.spins, dom);
  return out;
}

TasepConfig pair_inverse(const AbdfConfig& cfg) {
  if (const AbdfValidity v = validate_abdf(cfg); !v.ok)
    throw std::invalid_argument("pair_inverse: invalid configuration: " + v.reason);
  const Domain& dom = cfg.domain;
  const std::int64_t n = dom.size();

  TasepConfig out;
  out.domain = dom;
  out.occ.assign(static_cast<std::size_t>(n), 0);

  auto spin_site = [&](std::int64_t s) -> int {
    return cfg.spins[static_cast<std::size_t>(dom.index_of(dom.is_ring() ? dom.wrap(s) : s))];
  };

  bool zero = true;
  for (std::int8_t s : cfg.spins) zero = zero && s == 0;

  if (zero) {
    if (dom.is_ring()) {
      const int alt = *cfg.alt_flag;
      for (std::int64_t i = 0; i < n; ++i)
        out.occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i + alt) % 2);
      return out;
    }
    // All-zero window: eta(x_max) is pinned by the right tail, the rest
    // alternates leftwards.
    int value = 1 - dom.tail_right;
    for (std::int64_t i = n - 1; i >= 0; --i) {
      out.occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value);
      value = 1 - value;
    }
    return out;
  }

  std::vector<int> eta(static_cast<std::size_t>(n), -1);
  auto place = [&](std::int64_t site, int value) {
    if (value != 0 && value != 1)
      throw std::invalid_argument(
          "pair_inverse: fill formula left {0,1} at site " + std::to_string(site));
    const std::int64_t i = dom.index_of(dom.is_ring() ? dom.wrap(site) : site);
    if (i < 0 || i >= n) throw std::logic_error("pair_inverse: fill left the window");
    int& slot = eta[static_cast<std::size_t>(i)];
    if (slot == -1) {
      slot = value;
    } else if (slot != value) {
      throw std::invalid_argument(
          "pair_inverse: inconsistent segment junction at site " + std::to_string(site));
    }
  };

  const SegmentList list = maximal_alternating_segments(cfg.spins, dom);
  for (const AlternatingSegment& seg : list.segments) {
    // Anchor pair: a +1 spin sits on two empty sites, a -1 spin on two
    // occupied ones.
    const int e1 = (1 - spin_site(seg.x1)) / 2;
    place(seg.x1, e1);
    // eta(x1+j+1) = (1+(-1)^j)/2 - (-1)^j eta(x1)
    //               - sum_{k=0..j} (-1)^k spins(x1+j-k)
    // with the sum accumulated as (-1)^j * sum_{m=0..j} (-1)^m spins(x1+m).
    std::int64_t alternating_sum = 0;
    for (std::int64_t j = 0; j <= seg.n; ++j) {
      const int sign = j % 2 == 0 ? 1 : -1;
      alternating_sum += sign * spin_site(seg.x1 + j);
      const int value = (j % 2 == 0 ? 1 : 0) - sign * e1 -
                        static_cast<int>(sign * alternating_sum);
      place(seg.x1 + j + 1, value);
    }
  }

  if (!dom.is_ring()) {
    // Half lines: zero spins force eta to alternate away from the anchors.
    const std::int64_t first = *list.left_halfline_end;
    int value = (1 - spin_site(first)) / 2;
    for (std::int64_t x = first; x >= dom.x_min; --x) {
      place(x, value);
      value = 1 - value;
    }
    const std::int64_t last = *list.right_halfline_start;
    value = (1 - spin_site(last)) / 2;  // the anchor pair covers last+1 too
    for (std::int64_t x = last + 1; x <= dom.x_max; ++x) {
      place(x, value);
      value = 1 - value;
    }
  }

  for (std::int64_t i = 0; i < n; ++i) {
    if (eta[static_cast<std::size_t>(i)] == -1)
      throw std::logic_error("pair_inverse: unfilled site");
    out.occ[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(eta[static_cast<std::size_t>(i)]);
  }

  // Closure: the filled occupancy must reproduce every spin, wrap (or tail
  // read) included.  On rings this is the cyclic consistency assertion.
  auto occ_at = [&](std::int64_t s) -> int {
    if (dom.is_ring()) return out.occ[static_cast<std::size_t>(dom.wrap(s))];
    if (s > dom.x_max) return dom.tail_right;
    return out.occ[static_cast<std::size_t>(dom.index_of(s))];
  };
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t x = dom.site(i);
    if (1 - occ_at(x) - occ_at(x + 1) != cfg.spins[static_cast<std::size_t>(i)])
      throw std::invalid_argument(
          "pair_inverse: closure violation at site " + std::to_string(x));
  }
  return out;
}

}  // namespace qpflow
