#include "qpflow/abdf.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpflow {
namespace {

bool all_zero(const std::vector<std::int8_t>& spins) {
  return std::all_of(spins.begin(), spins.end(), [](std::int8_t s) { return s == 0; });
}

std::vector<std::int64_t> nonzero_indices(const std::vector<std::int8_t>& spins) {
  std::vector<std::int64_t> idx;
  for (std::size_t i = 0; i < spins.size(); ++i)
    if (spins[i] != 0) idx.push_back(static_cast<std::int64_t>(i));
  return idx;
}

bool parity_ok(int sign1, int sign2, std::int64_t gap) {
  // Equal endpoint signs need an even zero run, opposite signs an odd one.
  return (sign1 == sign2) == (gap % 2 == 0);
}

}  // namespace

Lambda0Report validate_lambda0(const std::vector<std::int8_t>& spins,
                               const Domain& domain) {
  Lambda0Report report;
  if (static_cast<std::int64_t>(spins.size()) != domain.size()) {
    report.ok = false;
    report.reason = "spin size does not match domain";
    return report;
  }
  const std::vector<std::int64_t> idx = nonzero_indices(spins);

  if (domain.is_ring()) {
    if (idx.empty()) {
      report.ok = false;
      report.reason = "identically-zero spins have no segment decomposition";
      return report;
    }
    const std::int64_t L = domain.ring_size;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const std::int64_t a = idx[i];
      const std::int64_t b = idx[(i + 1) % idx.size()];
      const std::int64_t gap = ((b - a - 1) % L + L) % L;
      if (!parity_ok(spins[static_cast<std::size_t>(a)],
                     spins[static_cast<std::size_t>(b)], gap)) {
        report.ok = false;
        report.x1 = a;
        report.x2 = b;
        report.gap = gap;
        report.reason = "sign/parity violation";
        return report;
      }
    }
    return report;
  }

  // Line window: in-window pairs plus the junction with the virtual right
  // anchor at x_max+1 of sign 1-2*tail_right.  The all-zero window still has
  // that anchor, so it is admissible.
  const int right_sign = 1 - 2 * domain.tail_right;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    const std::int64_t a = idx[i];
    const std::int64_t b = idx[i + 1];
    const std::int64_t gap = b - a - 1;
    if (!parity_ok(spins[static_cast<std::size_t>(a)],
                   spins[static_cast<std::size_t>(b)], gap)) {
      report.ok = false;
      report.x1 = domain.site(a);
      report.x2 = domain.site(b);
      report.gap = gap;
      report.reason = "sign/parity violation";
      return report;
    }
  }
  if (!idx.empty()) {
    const std::int64_t a = idx.back();
    const std::int64_t gap = (domain.size() - 1) - a;  // zeros between a and x_max+1
    if (!parity_ok(spins[static_cast<std::size_t>(a)], right_sign, gap)) {
      report.ok = false;
      report.x1 = domain.site(a);
      report.x2 = domain.x_max + 1;
      report.gap = gap;
      report.reason = "sign/parity violation at the right tail junction";
      return report;
    }
  }
  return report;
}

std::vector<std::uint8_t> activation_record(const std::vector<std::int8_t>& spins,
                                            const Domain& domain) {
  if (static_cast<std::int64_t>(spins.size()) != domain.size())
    throw std::invalid_argument("activation_record: spin size does not match domain");
  const std::int64_t n = domain.size();
  std::vector<std::uint8_t> act(static_cast<std::size_t>(n), 0);

  if (domain.is_ring()) {
    const std::vector<std::int64_t> idx = nonzero_indices(spins);
    if (idx.empty())
      throw std::invalid_argument("activation_record: all-zero ring has no record");
    // Left-anchor rule: walk forward from an anchor; an empty site at
    // distance k from a +1 spin is active iff k is even, from a -1 spin
    // iff k is odd.
    const std::int64_t start = idx[0];
    int anchor = spins[static_cast<std::size_t>(start)];
    std::int64_t k = 0;
    for (std::int64_t step = 1; step < n; ++step) {
      const std::int64_t i = (start + step) % n;
      if (spins[static_cast<std::size_t>(i)] != 0) {
        anchor = spins[static_cast<std::size_t>(i)];
        k = 0;
        continue;
      }
      ++k;
      act[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(anchor == 1 ? (k % 2 == 0) : (k % 2 == 1));
    }
    return act;
  }

  // Right-anchor rule against the exact virtual anchor at x_max+1: an empty
  // site at distance h from a +1 spin is active iff h is odd, from a -1 spin
  // iff h is even.
  int anchor = 1 - 2 * domain.tail_right;
  std::int64_t h = 1;
  for (std::int64_t i = n - 1; i >= 0; --i) {
    if (spins[static_cast<std::size_t>(i)] != 0) {
      anchor = spins[static_cast<std::size_t>(i)];
      h = 1;
      continue;
    }
    act[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(anchor == 1 ? (h % 2 == 1) : (h % 2 == 0));
    ++h;
  }
  return act;
}

AbdfValidity validate_abdf(const AbdfConfig& cfg) {
  AbdfValidity v;
  const std::int64_t n = cfg.domain.size();
  if (static_cast<std::int64_t>(cfg.spins.size()) != n ||
      static_cast<std::int64_t>(cfg.act.size()) != n) {
    v.ok = false;
    v.reason = "component sizes do not match domain";
    return v;
  }
  for (std::int8_t s : cfg.spins)
    if (s < -1 || s > 1) {
      v.ok = false;
      v.reason = "spin outside {-1,0,+1}";
      return v;
    }
  for (std::uint8_t a : cfg.act)
    if (a != 0 && a != 1) {
      v.ok = false;
      v.reason = "activation outside {0,1}";
      return v;
    }

  const bool zero = all_zero(cfg.spins);
  if (cfg.domain.is_ring() && zero) {
    if (!cfg.alt_flag.has_value()) {
      v.ok = false;
      v.reason = "all-zero ring requires the alternating label";
      return v;
    }
    const int alt = *cfg.alt_flag;
    if (alt != 0 && alt != 1) {
      v.ok = false;
      v.reason = "alternating label must be 0 or 1";
      return v;
    }
    for (std::int64_t i = 0; i < n; ++i)
      if (cfg.act[static_cast<std::size_t>(i)] != (i + alt) % 2) {
        v.ok = false;
        v.reason = "vacuum activation must be the alternating pattern";
        return v;
      }
    return v;
  }

  if (cfg.alt_flag.has_value()) {
    v.ok = false;
    v.reason = "alternating label only applies to the all-zero ring";
    return v;
  }
  const Lambda0Report lambda = validate_lambda0(cfg.spins, cfg.domain);
  if (!lambda.ok) {
    v.ok = false;
    v.reason = "spin admissibility: " + lambda.reason;
    return v;
  }
  if (cfg.act != activation_record(cfg.spins, cfg.domain)) {
    v.ok = false;
    v.reason = "activation does not match the record of the spins";
    return v;
  }
  return v;
}

AbdfConfig abdf_step(const AbdfConfig& cfg, const Noise& field, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("abdf_step: t must be >= 1");
  if (const AbdfValidity v = validate_abdf(cfg); !v.ok)
    throw std::invalid_argument("abdf_step: invalid configuration: " + v.reason);

  const Domain& dom = cfg.domain;
  const std::int64_t n = dom.size();

  // Window boundary reads take the full-line values implied by the frozen
  // tails.  The right virtual site is pure tail (spin 1 - 2*tail_right, never
  // active); the left one also depends on the occupancy at the window edge,
  // which the local data determines: a -1 spin means an occupied edge, a +1
  // an empty one, and for a zero spin the activation bit is the occupancy.
  int eta_edge = 0;
  if (!dom.is_ring() && n > 0) {
    const int s0 = cfg.spins[0];
    eta_edge = s0 == -1 ? 1 : s0 == 1 ? 0 : cfg.act[0];
  }
  auto spin_at = [&](std::int64_t s) -> int {
    if (dom.is_ring()) return cfg.spins[static_cast<std::size_t>(dom.wrap(s))];
    if (s < dom.x_min) return 1 - dom.tail_left - eta_edge;
    if (s > dom.x_max) return 1 - 2 * dom.tail_right;
    return cfg.spins[static_cast<std::size_t>(dom.index_of(s))];
  };
  auto act_at = [&](std::int64_t s) -> int {
    if (dom.is_ring()) return cfg.act[static_cast<std::size_t>(dom.wrap(s))];
    if (s < dom.x_min) return dom.tail_left * (1 - eta_edge);
    if (s > dom.x_max) return 0;
    return cfg.act[static_cast<std::size_t>(dom.index_of(s))];
  };
  auto coin = [&](std::int64_t s) { return field.bit(t - 1, dom.wrap(s)); };

  AbdfConfig out;
  out.domain = dom;
  out.spins.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t x = dom.site(i);
    const int k_m = 1 - coin(x - 1);
    const int k_p = 1 - coin(x + 1);
    const int value = std::max(spin_at(x - 1), 0) + act_at(x - 1) * k_m +
                      std::min(spin_at(x + 1), 0) - act_at(x + 1) * k_p;
    if (value < -1 || value > 1)
      throw std::logic_error("abdf_step: four-term formula left {-1,0,+1}");
    out.spins[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(value);
  }

  if (dom.is_ring() && all_zero(out.spins)) {
    const bool alt1 = spin_at(0) == -1 || (act_at(-1) == 1 && coin(-1) == 1) ||
                      (act_at(0) == 1 && coin(0) == 0);
    const int alt = alt1 ? 1 : 0;
    out.alt_flag = alt;
    out.act.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
      out.act[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i + alt) % 2);
    return out;
  }

  out.act = activation_record(out.spins, dom);
  return out;
}

AbdfConfig abdf_flow(const AbdfConfig& cfg, const Noise& field, std::int64_t t) {
  return abdf_flow_range(cfg, field, 0, t);
}

AbdfConfig abdf_flow_range(const AbdfConfig& cfg, const Noise& field,
                           std::int64_t t_begin, std::int64_t t_end) {
  if (t_end < t_begin)
    throw std::invalid_argument("abdf_flow_range: t_end < t_begin");
  AbdfConfig state = cfg;
  for (std::int64_t t = t_begin + 1; t <= t_end; ++t) state = abdf_step(state, field, t);
  return state;
}

std::string spin_string(const AbdfConfig& cfg) {
  std::string s;
  s.reserve(cfg.spins.size());
  for (std::int8_t v : cfg.spins) s.push_back(v == 1 ? '+' : v == -1 ? '-' : '0');
  return s;
}

std::string act_string(const AbdfConfig& cfg) {
  std::string s;
  s.reserve(cfg.act.size());
  for (std::uint8_t v : cfg.act) s.push_back(v ? '1' : '0');
  return s;
}

AbdfConfig abdf_from_strings(const Domain& domain, const std::string& spins,
                             const std::string& act, std::optional<int> alt_flag) {
  if (static_cast<std::int64_t>(spins.size()) != domain.size() ||
      static_cast<std::int64_t>(act.size()) != domain.size())
    throw std::invalid_argument("abdf_from_strings: literal length does not match domain");
  AbdfConfig cfg;
  cfg.domain = domain;
  cfg.alt_flag = alt_flag;
  cfg.spins.reserve(spins.size());
  for (char c : spins) {
    if (c != '+' && c != '-' && c != '0')
      throw std::invalid_argument("abdf_from_strings: spins must be over {+,-,0}");
    cfg.spins.push_back(c == '+' ? 1 : c == '-' ? -1 : 0);
  }
  cfg.act.reserve(act.size());
  for (char c : act) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("abdf_from_strings: activation must be over {0,1}");
    cfg.act.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return cfg;
}

}  // namespace qpflow
