#include "qpflow/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace qpflow {
namespace {

Rational wrap_position(const Rational& x, std::int64_t L) {
  const std::int64_t k = (x / Rational(L)).floor();
  return x - Rational(k * L);
}

// One frame-half of a discontinuity line, before cross-half merging.
struct Piece {
  Rational t_start, t_end, x0;
  int slope = 0, u_left = 0, u_right = 0;
};

void emit_pieces(const BurgersFrame& f, std::vector<Piece>& out) {
  const Rational half(1, 2);
  const Rational t0(f.t0);
  const Rational tm = t0 + half;
  const Rational t1 = t0 + Rational(1);

  // First half: every MA block translates; each block has a trailing edge
  // (behind it, Lax-violating) and a leading edge (ahead of it, entropic).
  for (std::int64_t z : f.cls.MA_plus) {
    out.push_back({t0, tm, Rational(z), +1, 0, 2});
    out.push_back({t0, tm, Rational(z) + half, +1, 2, 0});
  }
  for (std::int64_t z : f.cls.MA_minus) {
    out.push_back({t0, tm, Rational(z) - half, -1, 0, -2});
    out.push_back({t0, tm, Rational(z), -1, -2, 0});
  }

  // Second half: survivors continue, collision pairs shrink around a
  // stationary entropic center, fresh pairs open around a stationary
  // non-entropic one.
  for (std::int64_t z : f.cls.MA_iso_plus) {
    out.push_back({tm, t1, Rational(z) + half, +1, 0, 2});
    out.push_back({tm, t1, Rational(z) + Rational(1), +1, 2, 0});
  }
  for (std::int64_t z : f.cls.MA_iso_minus) {
    out.push_back({tm, t1, Rational(z) - Rational(1), -1, 0, -2});
    out.push_back({tm, t1, Rational(z) - half, -1, -2, 0});
  }
  for (std::int64_t x0 : f.cls.C) {
    out.push_back({tm, t1, Rational(x0) - half, +1, 0, 2});
    out.push_back({tm, t1, Rational(x0), 0, 2, -2});
    out.push_back({tm, t1, Rational(x0) + half, -1, -2, 0});
  }
  for (std::int64_t x0 : f.next_arising) {
    out.push_back({tm, t1, Rational(x0), 0, -2, 2});
    out.push_back({tm, t1, Rational(x0), +1, 2, 0});
    out.push_back({tm, t1, Rational(x0), -1, 0, -2});
  }
}

double bump(double s) {
  return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
}

double bump_derivative(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double d = 1.0 - s * s;
  return bump(s) * (-2.0 * s) / (d * d);
}

}  // namespace

Rational EdgeSegment::position(const Rational& t) const {
  return x0 + Rational(slope) * (t - t_start);
}

std::vector<EdgeSegment> edges(const std::vector<BurgersFrame>& frames) {
  std::vector<Piece> pieces;
  for (const BurgersFrame& f : frames) emit_pieces(f, pieces);
  if (pieces.empty()) return {};

  const bool ring = frames.front().domain.is_ring();
  const std::int64_t L = ring ? frames.front().domain.ring_size : 0;
  auto intercept = [&](const Piece& p) {
    const Rational c = p.x0 - Rational(p.slope) * p.t_start;
    return ring ? wrap_position(c, L) : c;
  };

  std::sort(pieces.begin(), pieces.end(), [&](const Piece& a, const Piece& b) {
    return std::make_tuple(a.slope, a.u_left, a.u_right, intercept(a), a.t_start) <
           std::make_tuple(b.slope, b.u_left, b.u_right, intercept(b), b.t_start);
  });

  std::vector<EdgeSegment> segments;
  for (std::size_t i = 0; i < pieces.size();) {
    const Piece& first = pieces[i];
    EdgeSegment seg;
    seg.t_start = first.t_start;
    seg.t_end = first.t_end;
    seg.x0 = ring ? wrap_position(first.x0, L) : first.x0;
    seg.slope = first.slope;
    seg.u_left = first.u_left;
    seg.u_right = first.u_right;
    std::size_t j = i + 1;
    for (; j < pieces.size(); ++j) {
      const Piece& next = pieces[j];
      const bool same_line = next.slope == seg.slope && next.u_left == seg.u_left &&
                             next.u_right == seg.u_right &&
                             intercept(next) == intercept(first);
      if (!same_line || next.t_start != seg.t_end) break;
      seg.t_end = next.t_end;
    }
    segments.push_back(seg);
    i = j;
  }
  return segments;
}

Rational rankine_hugoniot_residual(const EdgeSegment& edge) {
  return Rational(edge.slope) * Rational(edge.u_right - edge.u_left) -
         Rational(edge.u_right * edge.u_right - edge.u_left * edge.u_left, 2);
}

bool lax_entropic(const EdgeSegment& edge) {
  return edge.u_left >= edge.slope && edge.slope >= edge.u_right;
}

double TestFunction::value(double t, double x) const {
  return bump((t - t_c) / r_t) * bump((x - x_c) / r_x);
}

double TestFunction::dt(double t, double x) const {
  return bump_derivative((t - t_c) / r_t) / r_t * bump((x - x_c) / r_x);
}

double TestFunction::dx(double t, double x) const {
  return bump((t - t_c) / r_t) * bump_derivative((x - x_c) / r_x) / r_x;
}

double weak_residual(const std::vector<BurgersFrame>& frames, const TestFunction& phi,
                     double grid_step) {
  if (frames.empty()) throw std::invalid_argument("weak_residual: no frames");
  if (grid_step <= 0) throw std::invalid_argument("weak_residual: grid_step must be > 0");
  if (phi.r_t <= 0 || phi.r_x <= 0)
    throw std::invalid_argument("weak_residual: radii must be > 0");

  const double t_lo = phi.t_c - phi.r_t;
  const double t_hi = phi.t_c + phi.r_t;
  const double x_lo = phi.x_c - phi.r_x;
  const double x_hi = phi.x_c + phi.r_x;
  const double span_lo = static_cast<double>(frames.front().t0);
  const double span_hi = static_cast<double>(frames.back().t0) + 1.0;
  if (t_lo < span_lo || t_hi > span_hi)
    throw std::invalid_argument("weak_residual: support leaves the covered time span");
  if (frames.front().domain.is_ring()) {
    const double L = static_cast<double>(frames.front().domain.ring_size);
    if (x_lo < 0.0 || x_hi > L)
      throw std::invalid_argument("weak_residual: support leaves the ring chart [0,L]");
  }

  // Uniform cells of width exactly grid_step on both axes, anchored to the
  // chart rather than to the support: time cells have midpoints at integer
  // multiples of the step, space cells have boundaries there.  Every block
  // edge of a row sampled at time i*h is an integer multiple of h whenever h
  // divides 1/2, so with this phase the sampled rows are piecewise constant
  // on whole cells and the residual carries no discontinuity-crossing error,
  // only the smooth midpoint error of the test-function factors.  Cells that
  // overhang the support contribute nothing (the bump vanishes there) and
  // are skipped before any row is sampled.
  const double h = grid_step;
  const std::int64_t i_lo = static_cast<std::int64_t>(std::floor(t_lo / h)) + 1;
  const std::int64_t i_hi = static_cast<std::int64_t>(std::ceil(t_hi / h)) - 1;
  const std::int64_t j_lo = static_cast<std::int64_t>(std::floor(x_lo / h - 0.5)) + 1;
  const std::int64_t j_hi = static_cast<std::int64_t>(std::ceil(x_hi / h - 0.5)) - 1;
  if (i_hi < i_lo || j_hi < j_lo) return 0.0;

  // Per-axis bump factors, hoisted out of the row loop.
  const std::size_t n_x = static_cast<std::size_t>(j_hi - j_lo + 1);
  std::vector<double> bx(n_x), bdx(n_x);
  for (std::size_t j = 0; j < n_x; ++j) {
    const double x = (static_cast<double>(j_lo + static_cast<std::int64_t>(j)) + 0.5) * h;
    const double s = (x - phi.x_c) / phi.r_x;
    bx[j] = bump(s);
    bdx[j] = bump_derivative(s) / phi.r_x;
  }

  const double t0_first = static_cast<double>(frames.front().t0);
  double sum = 0.0;
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    const double t = static_cast<double>(i) * h;
    const double s = (t - phi.t_c) / phi.r_t;
    const double bt = bump(s);
    const double bdt = bump_derivative(s) / phi.r_t;
    if (bt == 0.0 && bdt == 0.0) continue;
    std::size_t k = static_cast<std::size_t>(std::floor(t - t0_first));
    if (k >= frames.size()) k = frames.size() - 1;
    const SampledRow row = sample_row(frames[k], t);
    for (std::size_t j = 0; j < n_x; ++j) {
      if (bx[j] == 0.0 && bdx[j] == 0.0) continue;
      const double x = (static_cast<double>(j_lo + static_cast<std::int64_t>(j)) + 0.5) * h;
      const double u = row.at(x);
      if (u == 0.0) continue;  // both integrand terms carry a factor of u
      sum += u * bdt * bx[j] + 0.5 * u * u * bt * bdx[j];
    }
  }
  return sum * h * h;
}

ConjugacyReport conjugacy_check(const TasepConfig& initial, const Noise& field,
                                std::int64_t T) {
  validate(initial);
  ConjugacyReport report;
  TasepConfig eta = initial;
  AbdfConfig state = pair_forward(eta);
  for (std::int64_t t = 1; t <= T; ++t) {
    eta = tasep_step(eta, field, t);
    state = abdf_step(state, field, t);
    const AbdfConfig expected = pair_forward(eta);
    if (!(expected == state)) {
      report.ok = false;
      report.failed_step = t;
      report.reason = "pair image of the exclusion state diverged: eta=" +
                      occupancy_string(eta) + " maps to spins=" + spin_string(expected) +
                      " act=" + act_string(expected) + ", flowed state has spins=" +
                      spin_string(state) + " act=" + act_string(state);
      if (expected.alt_flag != state.alt_flag)
        report.reason += " (alternating labels differ)";
      return report;
    }
  }
  return report;
}

BijectionReport bijection_check(int L) {
  const Domain dom = Domain::ring(L);  // rejects odd or tiny L
  if (L > 16)
    throw std::invalid_argument("bijection_check: exhaustive bound is L <= 16");

  BijectionReport report;
  auto key_of = [](const AbdfConfig& cfg) {
    std::string key = spin_string(cfg) + "|" + act_string(cfg) + "|";
    key += cfg.alt_flag.has_value() ? static_cast<char>('0' + *cfg.alt_flag) : '-';
    return key;
  };

  std::unordered_set<std::string> image;
  const std::uint64_t total = std::uint64_t{1} << L;
  image.reserve(total * 2);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    TasepConfig eta;
    eta.domain = dom;
    eta.occ.resize(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i)
      eta.occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((mask >> i) & 1);

    const AbdfConfig img = pair_forward(eta);
    if (const AbdfValidity v = validate_abdf(img); !v.ok) {
      report.ok = false;
      report.reason = "pair image invalid for eta=" + occupancy_string(eta) + ": " + v.reason;
      return report;
    }
    if (!image.insert(key_of(img)).second) {
      report.ok = false;
      report.reason = "pair map not injective at eta=" + occupancy_string(eta);
      return report;
    }
    if (!(pair_inverse(img) == eta)) {
      report.ok = false;
      report.reason = "inverse(forward) is not the identity at eta=" + occupancy_string(eta);
      return report;
    }
  }
  report.configurations = total;

  // Independent enumeration of the valid target set: all 3^L spin vectors
  // (admissible ones paired with their activation record) plus the two
  // labelled vacua.  The image must cover it exactly.
  std::uint64_t valid = 0;
  std::vector<std::int8_t> spins(static_cast<std::size_t>(L), -1);
  while (true) {
    bool zero = true;
    for (std::int8_t s : spins) zero = zero && s == 0;
    if (zero) {
      for (int alt = 0; alt <= 1; ++alt) {
        AbdfConfig vac;
        vac.domain = dom;
        vac.spins = spins;
        vac.alt_flag = alt;
        vac.act.resize(static_cast<std::size_t>(L));
        for (int i = 0; i < L; ++i)
          vac.act[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i + alt) % 2);
        ++valid;
        if (image.find(key_of(vac)) == image.end()) {
          report.ok = false;
          report.reason = "valid vacuum (alt=" + std::to_string(alt) + ") not in the image";
          return report;
        }
        if (!(pair_forward(pair_inverse(vac)) == vac)) {
          report.ok = false;
          report.reason = "forward(inverse) not the identity on vacuum alt=" + std::to_string(alt);
          return report;
        }
      }
    } else if (validate_lambda0(spins, dom).ok) {
      AbdfConfig cfg;
      cfg.domain = dom;
      cfg.spins = spins;
      cfg.act = activation_record(spins, dom);
      ++valid;
      if (image.find(key_of(cfg)) == image.end()) {
        report.ok = false;
        report.reason = "valid configuration " + spin_string(cfg) + " not in the image";
        return report;
      }
      if (!(pair_forward(pair_inverse(cfg)) == cfg)) {
        report.ok = false;
        report.reason = "forward(inverse) not the identity at " + spin_string(cfg);
        return report;
      }
    }
    // Odometer over {-1,0,+1}^L.
    int pos = 0;
    while (pos < L && spins[static_cast<std::size_t>(pos)] == 1) {
      spins[static_cast<std::size_t>(pos)] = -1;
      ++pos;
    }
    if (pos == L) break;
    ++spins[static_cast<std::size_t>(pos)];
  }
  report.valid_targets = valid;
  if (valid != total) {
    report.ok = false;
    report.reason = "valid target count " + std::to_string(valid) + " differs from 2^L = " +
                    std::to_string(total);
  }
  return report;
}

bool key_identity_holds(const TasepConfig& eta, const AbdfConfig& cfg) {
  if (!(eta.domain == cfg.domain)) return false;
  const Domain& dom = eta.domain;
  auto occ_at = [&](std::int64_t s) -> int {
    if (dom.is_ring()) return eta.occ[static_cast<std::size_t>(dom.wrap(s))];
    if (s > dom.x_max) return dom.tail_right;
    return eta.occ[static_cast<std::size_t>(dom.index_of(s))];
  };
  for (std::int64_t i = 0; i < dom.size(); ++i) {
    const std::int64_t x = dom.site(i);
    if (cfg.act[static_cast<std::size_t>(i)] != occ_at(x) * (1 - occ_at(x + 1)))
      return false;
  }
  return true;
}

bool parity_law_holds(const AbdfConfig& cfg) {
  bool zero = true;
  for (std::int8_t s : cfg.spins) zero = zero && s == 0;
  if (zero) return true;
  const SegmentList list = maximal_alternating_segments(cfg.spins, cfg.domain);
  for (const AlternatingSegment& seg : list.segments) {
    const int s1 = cfg.spins[static_cast<std::size_t>(cfg.domain.index_of(seg.x1))];
    const int s2 = cfg.spins[static_cast<std::size_t>(cfg.domain.index_of(seg.x2))];
    if ((s1 == s2) != (seg.n % 2 == 0)) return false;
  }
  return true;
}

}  // namespace qpflow
