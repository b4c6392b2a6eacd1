#include "qpflow/tasep.hpp"

#include <stdexcept>

namespace qpflow {

void validate(const TasepConfig& cfg) {
  if (static_cast<std::int64_t>(cfg.occ.size()) != cfg.domain.size())
    throw std::invalid_argument("TasepConfig: occupancy size does not match domain");
  for (std::uint8_t v : cfg.occ)
    if (v != 0 && v != 1)
      throw std::invalid_argument("TasepConfig: occupancy values must be 0 or 1");
}

TasepConfig tasep_step(const TasepConfig& cfg, const Noise& field, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("tasep_step: t must be >= 1");
  validate(cfg);
  const Domain& dom = cfg.domain;
  const std::int64_t n = dom.size();

  auto occ_at = [&](std::int64_t s) -> int {
    if (dom.is_ring()) return cfg.occ[static_cast<std::size_t>(dom.wrap(s))];
    if (s < dom.x_min) return dom.tail_left;
    if (s > dom.x_max) return dom.tail_right;
    return cfg.occ[static_cast<std::size_t>(dom.index_of(s))];
  };
  auto coin = [&](std::int64_t s) { return field.bit(t - 1, dom.wrap(s)); };

  TasepConfig out;
  out.domain = dom;
  out.occ.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t x = dom.site(i);
    const int here = occ_at(x);
    const int w_x = coin(x);
    const int w_xm = coin(x - 1);
    const int value = ((1 - w_x) * here + w_x * occ_at(x + 1)) * here +
                      ((1 - w_xm) * here + w_xm * occ_at(x - 1)) * (1 - here);
    out.occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value);
  }
  return out;
}

TasepConfig tasep_flow(const TasepConfig& cfg, const Noise& field, std::int64_t t) {
  return tasep_flow_range(cfg, field, 0, t);
}

TasepConfig tasep_flow_range(const TasepConfig& cfg, const Noise& field,
                             std::int64_t t_begin, std::int64_t t_end) {
  if (t_end < t_begin)
    throw std::invalid_argument("tasep_flow_range: t_end < t_begin");
  TasepConfig state = cfg;
  for (std::int64_t t = t_begin + 1; t <= t_end; ++t) state = tasep_step(state, field, t);
  return state;
}

std::int64_t particle_count(const TasepConfig& cfg) {
  std::int64_t n = 0;
  for (std::uint8_t v : cfg.occ) n += v;
  return n;
}

std::string occupancy_string(const TasepConfig& cfg) {
  std::string s;
  s.reserve(cfg.occ.size());
  for (std::uint8_t v : cfg.occ) s.push_back(v ? '1' : '0');
  return s;
}

TasepConfig tasep_from_string(const Domain& domain, const std::string& bits) {
  if (static_cast<std::int64_t>(bits.size()) != domain.size())
    throw std::invalid_argument("tasep_from_string: literal length does not match domain");
  TasepConfig cfg;
  cfg.domain = domain;
  cfg.occ.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("tasep_from_string: literal must be over {0,1}");
    cfg.occ.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return cfg;
}

}  // namespace qpflow
