#ifndef QPFLOW_ABDF_HPP
#define QPFLOW_ABDF_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpflow/domain.hpp"
#include "qpflow/noise.hpp"

namespace qpflow {

// Spin-and-activation configuration of the annihilating two-species particle
// model.  spins[i] in {-1,0,+1} and act[i] in {0,1} refer to domain.site(i).
//
// Validity on rings:
//   * spins not identically zero: the cyclic sign/parity condition holds
//     (see validate_lambda0), act equals the activation record of the spins,
//     and alt_flag is absent;
//   * spins identically zero: alt_flag is present and act is the alternating
//     pattern act(x) = (x + alt_flag) mod 2.
//
// On line windows alt_flag is never present: even an all-zero stored window
// has its activation pinned by the declared tails, because the tail occupancy
// implies a virtual spin 1-2*tail just outside the window.  The virtual right
// anchor is exact; the virtual left anchor assumes the occupancy at the left
// window edge continues the tail, which holds for tail-padded windows.
struct AbdfConfig {
  Domain domain;
  std::vector<std::int8_t> spins;
  std::vector<std::uint8_t> act;
  std::optional<int> alt_flag;

  bool operator==(const AbdfConfig& other) const {
    return domain == other.domain && spins == other.spins && act == other.act &&
           alt_flag == other.alt_flag;
  }
};

struct Lambda0Report {
  bool ok = true;
  // When !ok: the offending pair of consecutive non-zero spins (or the reason
  // string alone for the all-zero case).
  std::int64_t x1 = 0, x2 = 0;
  std::int64_t gap = 0;  // number of strictly interior zero sites
  std::string reason;
};

// Sign/parity admissibility of a spin sequence: between consecutive non-zero
// spins, opposite signs require an odd number of zero sites and equal signs an
// even number.  On rings the scan is cyclic (so a single non-zero spin on an
// even ring is inadmissible: its self-gap L-1 is odd while the signs match).
// On line windows the in-window pairs are checked, plus the junction with the
// virtual right tail spin; the identically-zero window is fine there, while on
// rings (and as a bare sequence) all-zero is reported as inadmissible.
Lambda0Report validate_lambda0(const std::vector<std::int8_t>& spins,
                               const Domain& domain);

// Activation record of a spin sequence: 0 on occupied sites; an empty site is
// active or inert according to the distance to (and sign of) the nearest
// non-zero spin.  Ring version uses the left-anchor rule, windows use the
// right-anchor rule (the two agree wherever both anchors exist).  Throws
// std::invalid_argument for the all-zero ring, which has no record.
std::vector<std::uint8_t> activation_record(const std::vector<std::int8_t>& spins,
                                            const Domain& domain);

// Structural validity of a full configuration (see AbdfConfig).
struct AbdfValidity {
  bool ok = true;
  std::string reason;
};
AbdfValidity validate_abdf(const AbdfConfig& cfg);

// One synchronous update consuming noise row t-1 (t >= 1):
//
//   spins'(x) = max(spins(x-1), 0) + act(x-1) k(t-1, x-1)
//             + min(spins(x+1), 0) - act(x+1) k(t-1, x+1),       k = 1 - w.
//
// Right spins advance right, left spins advance left, an active site whose
// coin shows 0 emits a fresh (left, right) pair, and simultaneous arrivals
// annihilate.  act' is recomputed from scratch from spins'.  If spins' is
// identically zero on a ring, the alternating label is alt_1 exactly when
//   spins(0) == -1, or act(-1) == 1 and w(t-1,-1) == 1,
//   or act(0) == 1 and w(t-1,0) == 0
// (indices mod L), and alt_0 otherwise.
//
// On line windows the boundary reads take the full-line values implied by
// the frozen tails (so spins and fresh pairs can walk in or out at the window
// edges exactly as the conjugate occupancy flow moves particles there), and
// act' uses the right-anchor rule against the virtual tail spin.
AbdfConfig abdf_step(const AbdfConfig& cfg, const Noise& field, std::int64_t t);

AbdfConfig abdf_flow(const AbdfConfig& cfg, const Noise& field, std::int64_t t);
AbdfConfig abdf_flow_range(const AbdfConfig& cfg, const Noise& field,
                           std::int64_t t_begin, std::int64_t t_end);

// Aligned serialization: spins over {+,-,0} and activation over {0,1}, plus
// the alternating label when present ("spins=..., act=..., alt=1").
std::string spin_string(const AbdfConfig& cfg);
std::string act_string(const AbdfConfig& cfg);
AbdfConfig abdf_from_strings(const Domain& domain, const std::string& spins,
                             const std::string& act,
                             std::optional<int> alt_flag = std::nullopt);

}  // namespace qpflow

#endif  // QPFLOW_ABDF_HPP
