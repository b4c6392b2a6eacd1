#ifndef QPFLOW_BURGERS_HPP
#define QPFLOW_BURGERS_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpflow/abdf.hpp"
#include "qpflow/rational.hpp"

namespace qpflow {

// Every quasi-particle in the pipeline has height 2, width 1/2 and speed 1
// (right movers) or -1 (left movers); pairs are glued back to back.
inline constexpr int kBlockValue = 2;       // |u| on a block
inline Rational block_width() { return Rational(1, 2); }

enum class QuasiParticleKind { IsoRight, IsoLeft, ArisingPair, CoalescingPair };

struct QuasiParticle {
  QuasiParticleKind kind = QuasiParticleKind::IsoRight;
  std::int64_t anchor = 0;   // site the primitive is pinned to
  Rational width{1, 2};      // h
  Rational speed{1};         // v (sign carried by the kind)
  Rational height{2};        // w = 2v
};

// Site sets steering one unit time interval of the field, all computed from
// the configuration at its left endpoint plus one noise row:
//   M_plus / M_minus    non-zero spin positions,
//   A                   active sites whose coin at t0 shows 0 (fresh pairs,
//                       fully formed at t0 and opening outward),
//   MA_plus/minus       M_plus (resp. M_minus) joined with A,
//   C                   collision sites: left neighbour carries a right block
//                       and right neighbour a left block,
//   MA_iso_plus/minus   members of MA that do not feed a collision.
struct SiteClassification {
  std::vector<std::int64_t> M_plus, M_minus, A, MA_plus, MA_minus, C,
      MA_iso_plus, MA_iso_minus;
};

// The velocity field on [t0, t0+1].  During the first half every block of
// MA_plus translates right and every block of MA_minus translates left; at
// the half time the collision pairs at C switch to shrinking back-to-back
// blocks that vanish at t0+1, and the next generation of pairs (next_arising)
// grows from zero width starting at t0+1/2.
struct BurgersFrame {
  std::int64_t t0 = 0;
  Domain domain;
  SiteClassification cls;
  std::vector<std::int64_t> next_arising;  // arising set of the stepped config
};

// Classification of cfg with noise row t0.  cfg must be valid.
SiteClassification classify_sites(const AbdfConfig& cfg, const Noise& field,
                                  std::int64_t t0);

// Builds the frame for [t0, t0+1].  Consumes noise rows t0 (classification
// and the step) and t0+1 (the arising set of the stepped configuration).
// Pairwise disjointness of all block supports is asserted at construction.
BurgersFrame build_frame(const AbdfConfig& cfg, const Noise& field, std::int64_t t0);

// Exact field value at rational time t in [t0, t0+1], x anywhere (wrapped on
// rings).  Values are always in {-2, 0, +2}.
int evaluate(const BurgersFrame& frame, const Rational& t, const Rational& x);

// Minimal breakpoint representation of u(t, .): positions where the value
// changes, each carrying the value to its right.  On a line the value before
// the first breakpoint is 0; on a ring the list is cyclic (the value before
// the first breakpoint is the last entry's value).
struct Breakpoint {
  Rational pos;
  int value = 0;

  bool operator==(const Breakpoint& o) const { return pos == o.pos && value == o.value; }
};

struct Profile {
  Domain domain;
  std::vector<Breakpoint> points;

  bool operator==(const Profile& o) const {
    return domain == o.domain && points == o.points;
  }
};

Profile profile(const BurgersFrame& frame, const Rational& t);

// Exact integral of u over the whole domain (ring circumference or full line).
Rational total_mass(const Profile& profile);

// Exact integral of u over [a, b).
Rational integrate(const Profile& profile, const Rational& a, const Rational& b);

// Field value of a profile at a point (value-to-the-right convention).
int profile_value(const Profile& profile, const Rational& x);

// Inverse of the integer-time field construction.  The spin at z is the
// integral of u over [z-1/2, z+1/2); if all spins vanish, the +4 jump
// positions (fully formed fresh pairs) decide the alternating label: even
// positions mean alt_flag = 1, odd mean alt_flag = 0.
//
// A profile with no spins and no +4 jump carries no trace of the label; that
// case throws ReconstructError with ambiguous_vacuum = true.  Misaligned
// breakpoints or block integrals outside {-1, 0, +1} (a profile not taken at
// an integer time of a valid frame) throw with ambiguous_vacuum = false.
struct ReconstructError : std::runtime_error {
  explicit ReconstructError(const std::string& what, bool ambiguous)
      : std::runtime_error(what), ambiguous_vacuum(ambiguous) {}
  bool ambiguous_vacuum = false;
};
AbdfConfig reconstruct(const Profile& profile);

// Frames for [0,1], ..., [T-1, T] driven by the spin/activation flow, plus
// every integer-time configuration.  On rings the construction asserts that
// consecutive frames produce identical breakpoint lists at the shared integer
// times; window frames are exempt because blocks crossing the window edge are
// not representable there.
struct Trajectory {
  std::vector<AbdfConfig> configs;  // size T+1
  std::vector<BurgersFrame> frames; // size T
};
Trajectory trajectory(const AbdfConfig& cfg, const Noise& field, std::int64_t T);

// Primitive list of a frame (iso movers, collision pairs, growing pairs).
std::vector<QuasiParticle> quasi_particles(const BurgersFrame& frame);

// Piecewise-constant row sampled at real-valued time, for quadrature layers.
// Same block layout as profile(), built in double precision.
struct SampledRow {
  std::vector<double> pos;  // ascending breakpoint positions
  std::vector<int> value;   // value[i] holds on [pos[i], pos[i+1])
  int before = 0;           // value left of pos[0] (line: 0; ring: wrap value)
  double at(double x) const;
};
SampledRow sample_row(const BurgersFrame& frame, double t);

// CSV rows "t,position,value" with exact decimal positions.
void write_profile_csv(std::ostream& out, const std::vector<BurgersFrame>& frames,
                       const std::vector<Rational>& times);

// JSON object with the classification sets and primitive list.
std::string frame_to_json(const BurgersFrame& frame);

}  // namespace qpflow

#endif  // QPFLOW_BURGERS_HPP
