#ifndef QPFLOW_TASEP_HPP
#define QPFLOW_TASEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qpflow/domain.hpp"
#include "qpflow/noise.hpp"

namespace qpflow {

// Occupancy configuration of the discrete-time exclusion process.
// occ[i] in {0,1} is the occupancy of domain.site(i).
struct TasepConfig {
  Domain domain;
  std::vector<std::uint8_t> occ;

  bool operator==(const TasepConfig& other) const {
    return domain == other.domain && occ == other.occ;
  }
};

// Throws std::invalid_argument if sizes or values are off.
void validate(const TasepConfig& cfg);

// One synchronous update consuming noise row t-1 (t >= 1):
//
//   eta'(x) = [k(t-1,x)   eta(x) + w(t-1,x)   eta(x+1)] eta(x)
//           + [k(t-1,x-1) eta(x) + w(t-1,x-1) eta(x-1)] (1 - eta(x))
//
// with k = 1 - w.  An occupied site with a free right neighbour jumps exactly
// when its coin shows 1; everything else is frozen.  On rings the neighbour
// indices wrap; on line windows the reads at x_min-1 / x_max+1 use the frozen
// tail occupancies and writes that would land outside are discarded.
TasepConfig tasep_step(const TasepConfig& cfg, const Noise& field, std::int64_t t);

// Composition of steps 1..t (t = 0 returns the input unchanged).
TasepConfig tasep_flow(const TasepConfig& cfg, const Noise& field, std::int64_t t);

// Steps t_begin+1 .. t_end, i.e. the flow restarted from an intermediate time.
TasepConfig tasep_flow_range(const TasepConfig& cfg, const Noise& field,
                             std::int64_t t_begin, std::int64_t t_end);

std::int64_t particle_count(const TasepConfig& cfg);

// "0"/"1" string in site order.
std::string occupancy_string(const TasepConfig& cfg);
TasepConfig tasep_from_string(const Domain& domain, const std::string& bits);

}  // namespace qpflow

#endif  // QPFLOW_TASEP_HPP
