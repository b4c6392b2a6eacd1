#include "qpflow/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace qpflow {
namespace {

struct Block {
  Rational lo, hi;  // support [lo, hi), hi > lo
  int value = 0;
};

Rational wrap_position(const Rational& x, std::int64_t L) {
  const std::int64_t k = (x / Rational(L)).floor();
  return x - Rational(k * L);
}

bool member(const std::vector<std::int64_t>& sorted, std::int64_t z) {
  return std::binary_search(sorted.begin(), sorted.end(), z);
}

std::vector<std::int64_t> sorted_union(const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// The frame's block supports at relative time tau in [0,1], unwrapped (ring
// blocks may stick out of [0, L)).  First half: every MA block translates.
// Second half: survivors keep translating, collision pairs shrink onto their
// centers, fresh pairs grow out of theirs.
std::vector<Block> block_list(const BurgersFrame& frame, const Rational& tau) {
  const Rational half(1, 2);
  std::vector<Block> blocks;
  auto add = [&blocks](const Rational& lo, const Rational& hi, int value) {
    if (lo < hi) blocks.push_back({lo, hi, value});
  };
  if (tau < half) {
    for (std::int64_t z : frame.cls.MA_plus)
      add(Rational(z) + tau, Rational(z) + tau + half, 2);
    for (std::int64_t z : frame.cls.MA_minus)
      add(Rational(z) - tau - half, Rational(z) - tau, -2);
    return blocks;
  }
  const Rational sigma = tau - half;
  const Rational closing = Rational(1) - tau;
  for (std::int64_t z : frame.cls.MA_iso_plus)
    add(Rational(z) + tau, Rational(z) + tau + half, 2);
  for (std::int64_t z : frame.cls.MA_iso_minus)
    add(Rational(z) - tau - half, Rational(z) - tau, -2);
  for (std::int64_t x0 : frame.cls.C) {
    add(Rational(x0) - closing, Rational(x0), 2);
    add(Rational(x0), Rational(x0) + closing, -2);
  }
  for (std::int64_t x0 : frame.next_arising) {
    add(Rational(x0), Rational(x0) + sigma, 2);
    add(Rational(x0) - sigma, Rational(x0), -2);
  }
  return blocks;
}

Rational frame_tau(const BurgersFrame& frame, const Rational& t) {
  const Rational t0(frame.t0);
  if (t < t0 || t > t0 + Rational(1))
    throw std::invalid_argument("time " + t.str() + " outside frame interval [" +
                                t0.str() + "," + (t0 + Rational(1)).str() + "]");
  return t - t0;
}

}  // namespace

SiteClassification classify_sites(const AbdfConfig& cfg, const Noise& field,
                                  std::int64_t t0) {
  if (const AbdfValidity v = validate_abdf(cfg); !v.ok)
    throw std::invalid_argument("classify_sites: invalid configuration: " + v.reason);
  const Domain& dom = cfg.domain;
  const std::int64_t n = dom.size();

  SiteClassification cls;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t z = dom.site(i);
    const std::int8_t s = cfg.spins[static_cast<std::size_t>(i)];
    if (s == 1) cls.M_plus.push_back(z);
    if (s == -1) cls.M_minus.push_back(z);
    if (cfg.act[static_cast<std::size_t>(i)] == 1 && field.bit(t0, z) == 0)
      cls.A.push_back(z);
  }
  cls.MA_plus = sorted_union(cls.M_plus, cls.A);
  cls.MA_minus = sorted_union(cls.M_minus, cls.A);

  auto neighbour = [&dom](std::int64_t z, std::int64_t d) {
    return dom.is_ring() ? dom.wrap(z + d) : z + d;
  };
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t z = dom.site(i);
    if (member(cls.MA_plus, neighbour(z, -1)) && member(cls.MA_minus, neighbour(z, +1)))
      cls.C.push_back(z);
  }
  for (std::int64_t z : cls.MA_plus)
    if (!member(cls.C, neighbour(z, +1))) cls.MA_iso_plus.push_back(z);
  for (std::int64_t z : cls.MA_minus)
    if (!member(cls.C, neighbour(z, -1))) cls.MA_iso_minus.push_back(z);
  return cls;
}

BurgersFrame build_frame(const AbdfConfig& cfg, const Noise& field, std::int64_t t0) {
  if (t0 < 0) throw std::invalid_argument("build_frame: t0 must be >= 0");
  BurgersFrame frame;
  frame.t0 = t0;
  frame.domain = cfg.domain;
  frame.cls = classify_sites(cfg, field, t0);

  const AbdfConfig next = abdf_step(cfg, field, t0 + 1);
  for (std::int64_t i = 0; i < cfg.domain.size(); ++i) {
    const std::int64_t z = cfg.domain.site(i);
    if (next.act[static_cast<std::size_t>(i)] == 1 && field.bit(t0 + 1, z) == 0)
      frame.next_arising.push_back(z);
  }

  // Support disjointness is asserted by every profile construction; touch one
  // representative time in each half here so a bad frame fails at birth.
  profile(frame, Rational(t0) + Rational(1, 4));
  profile(frame, Rational(t0) + Rational(3, 4));
  return frame;
}

int evaluate(const BurgersFrame& frame, const Rational& t, const Rational& x) {
  const Rational tau = frame_tau(frame, t);
  int value = 0, hits = 0;
  for (const Block& b : block_list(frame, tau)) {
    bool inside;
    if (frame.domain.is_ring()) {
      const Rational offset = wrap_position(x - b.lo, frame.domain.ring_size);
      inside = offset < b.hi - b.lo;
    } else {
      inside = b.lo <= x && x < b.hi;
    }
    if (inside) {
      value += b.value;
      ++hits;
    }
  }
  if (hits > 1) throw std::logic_error("evaluate: overlapping block supports");
  return value;
}

Profile profile(const BurgersFrame& frame, const Rational& t) {
  const Rational tau = frame_tau(frame, t);
  std::vector<Block> blocks = block_list(frame, tau);

  Profile p;
  p.domain = frame.domain;

  if (frame.domain.is_ring()) {
    const std::int64_t L = frame.domain.ring_size;
    std::vector<Block> wrapped;
    wrapped.reserve(blocks.size() + 1);
    for (const Block& b : blocks) {
      const Rational width = b.hi - b.lo;
      const Rational lo = wrap_position(b.lo, L);
      if (lo + width <= Rational(L)) {
        wrapped.push_back({lo, lo + width, b.value});
      } else {
        wrapped.push_back({lo, Rational(L), b.value});
        wrapped.push_back({Rational(0), lo + width - Rational(L), b.value});
      }
    }
    blocks = std::move(wrapped);
  }

  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
    if (blocks[i + 1].lo < blocks[i].hi)
      throw std::logic_error("profile: overlapping block supports");

  std::vector<Breakpoint>& pts = p.points;
  if (frame.domain.is_ring()) {
    // Cyclic interval walk over [0, L); the only possible redundant
    // breakpoint is the seam one at 0.
    const Rational L(frame.domain.ring_size);
    Rational cursor(0);
    for (const Block& b : blocks) {
      if (cursor < b.lo) pts.push_back({cursor, 0});
      pts.push_back({b.lo, b.value});
      cursor = b.hi;
    }
    if (cursor < L) pts.push_back({cursor, 0});
    if (!pts.empty() && pts.front().value == pts.back().value)
      pts.erase(pts.begin());
  } else {
    for (const Block& b : blocks) {
      if (!pts.empty() && pts.back().pos == b.lo)
        pts.back().value = b.value;  // block starts where the previous ended
      else
        pts.push_back({b.lo, b.value});
      pts.push_back({b.hi, 0});
    }
  }

  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i].value == pts[i + 1].value)
      throw std::logic_error("profile: non-minimal breakpoint list");
  return p;
}

int profile_value(const Profile& profile, const Rational& x) {
  if (profile.points.empty()) return 0;
  const Rational xx = profile.domain.is_ring()
                          ? wrap_position(x, profile.domain.ring_size)
                          : x;
  auto it = std::upper_bound(
      profile.points.begin(), profile.points.end(), xx,
      [](const Rational& v, const Breakpoint& b) { return v < b.pos; });
  if (it == profile.points.begin())
    return profile.domain.is_ring() ? profile.points.back().value : 0;
  return std::prev(it)->value;
}

Rational integrate(const Profile& profile, const Rational& a, const Rational& b) {
  if (b < a) throw std::invalid_argument("integrate: b < a");
  if (profile.points.empty() || a == b) return Rational(0);

  std::vector<Rational> cuts;
  cuts.push_back(a);
  if (profile.domain.is_ring()) {
    const Rational L(profile.domain.ring_size);
    for (const Breakpoint& pt : profile.points) {
      Rational q = pt.pos + Rational(((a - pt.pos) / L).floor()) * L;
      for (; q < b; q = q + L)
        if (a < q) cuts.push_back(q);
    }
  } else {
    for (const Breakpoint& pt : profile.points)
      if (a < pt.pos && pt.pos < b) cuts.push_back(pt.pos);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  Rational total(0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total = total + Rational(profile_value(profile, cuts[i])) * (cuts[i + 1] - cuts[i]);
  return total;
}

Rational total_mass(const Profile& profile) {
  if (profile.domain.is_ring())
    return integrate(profile, Rational(0), Rational(profile.domain.ring_size));
  if (profile.points.empty()) return Rational(0);
  Rational total(0);
  for (std::size_t i = 0; i + 1 < profile.points.size(); ++i)
    total = total + Rational(profile.points[i].value) *
                        (profile.points[i + 1].pos - profile.points[i].pos);
  return total;
}

AbdfConfig reconstruct(const Profile& profile) {
  const Domain& dom = profile.domain;
  for (const Breakpoint& pt : profile.points)
    if (pt.pos.den != 1 && pt.pos.den != 2)
      throw ReconstructError(
          "reconstruct: breakpoint off the half-integer grid (profile not at an integer frame time)",
          false);

  AbdfConfig cfg;
  cfg.domain = dom;
  const std::int64_t n = dom.size();
  cfg.spins.resize(static_cast<std::size_t>(n));
  bool zero = true;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t z = dom.site(i);
    const Rational cell =
        integrate(profile, Rational(2 * z - 1, 2), Rational(2 * z + 1, 2));
    if (!cell.is_integer() || cell < Rational(-1) || cell > Rational(1))
      throw ReconstructError("reconstruct: unit-cell integral " + cell.str() +
                                 " outside {-1,0,+1} at site " + std::to_string(z),
                             false);
    cfg.spins[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(cell.num);
    zero = zero && cell.num == 0;
  }

  if (!zero || !dom.is_ring()) {
    cfg.act = activation_record(cfg.spins, dom);
  } else {
    // Vacuum ring: fully formed fresh pairs (+4 jumps) reveal the label.
    std::vector<std::int64_t> markers;
    for (std::size_t j = 0; j < profile.points.size(); ++j) {
      const int prev = profile.points[j == 0 ? profile.points.size() - 1 : j - 1].value;
      if (prev == -2 && profile.points[j].value == 2) {
        if (profile.points[j].pos.den != 1)
          throw ReconstructError("reconstruct: +4 jump off the integer grid", false);
        markers.push_back(profile.points[j].pos.num);
      }
    }
    if (markers.empty())
      throw ReconstructError(
          "reconstruct: all-empty profile carries no trace of the alternating label",
          true);
    const int alt = markers[0] % 2 == 0 ? 1 : 0;
    for (std::int64_t m : markers)
      if ((m % 2 == 0 ? 1 : 0) != alt)
        throw ReconstructError("reconstruct: +4 jumps of mixed parity", false);
    cfg.alt_flag = alt;
    cfg.act.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
      cfg.act[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i + alt) % 2);
  }

  if (const AbdfValidity v = validate_abdf(cfg); !v.ok)
    throw ReconstructError("reconstruct: rebuilt configuration invalid: " + v.reason,
                           false);
  return cfg;
}

Trajectory trajectory(const AbdfConfig& cfg, const Noise& field, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("trajectory: T must be >= 1");
  Trajectory tr;
  tr.configs.push_back(cfg);
  for (std::int64_t t0 = 0; t0 < T; ++t0) {
    tr.frames.push_back(build_frame(tr.configs.back(), field, t0));
    tr.configs.push_back(abdf_step(tr.configs.back(), field, t0 + 1));
  }
  // Exact gluing only holds on rings: window frames cannot represent blocks
  // crossing the window edge (the field beyond the stored sites is not
  // determined by the window data), so their profiles may disagree there.
  if (cfg.domain.is_ring())
    for (std::int64_t t0 = 1; t0 < T; ++t0)
      if (!(profile(tr.frames[static_cast<std::size_t>(t0 - 1)], Rational(t0)) ==
            profile(tr.frames[static_cast<std::size_t>(t0)], Rational(t0))))
        throw std::logic_error("trajectory: consecutive frames disagree at t=" +
                               std::to_string(t0));
  return tr;
}

std::vector<QuasiParticle> quasi_particles(const BurgersFrame& frame) {
  std::vector<QuasiParticle> list;
  for (std::int64_t z : frame.cls.MA_iso_plus)
    list.push_back({QuasiParticleKind::IsoRight, z});
  for (std::int64_t z : frame.cls.MA_iso_minus)
    list.push_back({QuasiParticleKind::IsoLeft, z});
  for (std::int64_t z : frame.cls.C)
    list.push_back({QuasiParticleKind::CoalescingPair, z});
  for (std::int64_t z : frame.next_arising)
    list.push_back({QuasiParticleKind::ArisingPair, z});
  return list;
}

double SampledRow::at(double x) const {
  if (pos.empty() || x < pos.front()) return before;
  const std::size_t idx = static_cast<std::size_t>(
      std::upper_bound(pos.begin(), pos.end(), x) - pos.begin() - 1);
  return value[idx];
}

SampledRow sample_row(const BurgersFrame& frame, double t) {
  const double t0 = static_cast<double>(frame.t0);
  if (t < t0 || t > t0 + 1.0)
    throw std::invalid_argument("sample_row: time outside frame interval");
  const double tau = t - t0;

  struct DBlock {
    double lo, hi;
    int value;
  };
  std::vector<DBlock> blocks;
  auto add = [&blocks](double lo, double hi, int value) {
    if (lo < hi) blocks.push_back({lo, hi, value});
  };
  if (tau < 0.5) {
    for (std::int64_t z : frame.cls.MA_plus) add(z + tau, z + tau + 0.5, 2);
    for (std::int64_t z : frame.cls.MA_minus) add(z - tau - 0.5, z - tau, -2);
  } else {
    const double sigma = tau - 0.5;
    const double closing = 1.0 - tau;
    for (std::int64_t z : frame.cls.MA_iso_plus) add(z + tau, z + tau + 0.5, 2);
    for (std::int64_t z : frame.cls.MA_iso_minus) add(z - tau - 0.5, z - tau, -2);
    for (std::int64_t x0 : frame.cls.C) {
      add(x0 - closing, x0, 2);
      add(x0, x0 + closing, -2);
    }
    for (std::int64_t x0 : frame.next_arising) {
      add(x0, x0 + sigma, 2);
      add(x0 - sigma, x0, -2);
    }
  }

  if (frame.domain.is_ring()) {
    const double L = static_cast<double>(frame.domain.ring_size);
    std::vector<DBlock> wrapped;
    wrapped.reserve(blocks.size() + 1);
    for (const DBlock& b : blocks) {
      const double width = b.hi - b.lo;
      const double lo = b.lo - L * std::floor(b.lo / L);
      if (lo + width <= L) {
        wrapped.push_back({lo, lo + width, b.value});
      } else {
        wrapped.push_back({lo, L, b.value});
        wrapped.push_back({0.0, lo + width - L, b.value});
      }
    }
    blocks = std::move(wrapped);
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const DBlock& a, const DBlock& b) { return a.lo < b.lo; });

  SampledRow row;
  row.pos.reserve(blocks.size() * 2);
  row.value.reserve(blocks.size() * 2);
  for (const DBlock& b : blocks) {
    row.pos.push_back(b.lo);
    row.value.push_back(b.value);
    row.pos.push_back(b.hi);
    row.value.push_back(0);
  }
  return row;
}

void write_profile_csv(std::ostream& out, const std::vector<BurgersFrame>& frames,
                       const std::vector<Rational>& times) {
  out << "t,position,value\n";
  for (const Rational& t : times) {
    const BurgersFrame* owner = nullptr;
    for (const BurgersFrame& frame : frames)
      if (Rational(frame.t0) <= t && t <= Rational(frame.t0) + Rational(1)) {
        owner = &frame;
        break;
      }
    if (owner == nullptr)
      throw std::invalid_argument("write_profile_csv: time " + t.str() +
                                  " outside the covered span");
    for (const Breakpoint& pt : profile(*owner, t).points)
      out << t.str() << ',' << pt.pos.str() << ',' << pt.value << '\n';
  }
}

std::string frame_to_json(const BurgersFrame& frame) {
  nlohmann::json j;
  j["t0"] = frame.t0;
  j["domain"] = frame.domain.describe();
  j["classification"] = {
      {"M_plus", frame.cls.M_plus},         {"M_minus", frame.cls.M_minus},
      {"A", frame.cls.A},                   {"MA_plus", frame.cls.MA_plus},
      {"MA_minus", frame.cls.MA_minus},     {"C", frame.cls.C},
      {"MA_iso_plus", frame.cls.MA_iso_plus},
      {"MA_iso_minus", frame.cls.MA_iso_minus},
  };
  j["next_arising"] = frame.next_arising;
  nlohmann::json particles = nlohmann::json::array();
  for (const QuasiParticle& qp : quasi_particles(frame)) {
    const char* kind = qp.kind == QuasiParticleKind::IsoRight      ? "iso-right"
                       : qp.kind == QuasiParticleKind::IsoLeft     ? "iso-left"
                       : qp.kind == QuasiParticleKind::ArisingPair ? "arising-pair"
                                                                   : "coalescing-pair";
    particles.push_back({{"kind", kind},
                         {"anchor", qp.anchor},
                         {"width", qp.width.str()},
                         {"speed", qp.speed.str()},
                         {"height", qp.height.str()}});
  }
  j["quasi_particles"] = std::move(particles);
  return j.dump(2);
}

}  // namespace qpflow
