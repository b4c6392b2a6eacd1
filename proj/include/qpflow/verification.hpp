#ifndef QPFLOW_VERIFICATION_HPP
#define QPFLOW_VERIFICATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpflow/burgers.hpp"
#include "qpflow/pairmap.hpp"
#include "qpflow/tasep.hpp"

namespace qpflow {

// A maximal straight piece of discontinuity line x(t) = x0 + slope*(t - t_start),
// carrying the field values on both sides.  Slopes are -1, 0 or +1; positions
// at the endpoints are half-integer multiples.  On rings x(t) is understood
// modulo the ring size.
struct EdgeSegment {
  Rational t_start, t_end;  // t_start < t_end
  Rational x0;              // position at t_start
  int slope = 0;
  int u_left = 0;   // value just left of the line
  int u_right = 0;  // value just right of the line

  Rational position(const Rational& t) const;
};

// All discontinuity segments of a frame sequence, merged across half-frame
// and frame boundaries into maximal pieces.
std::vector<EdgeSegment> edges(const std::vector<BurgersFrame>& frames);

// Rankine-Hugoniot defect  s*(u_r - u_l) - (u_r^2 - u_l^2)/2  of a segment.
// Zero exactly when the jump speed matches the flux jump.
Rational rankine_hugoniot_residual(const EdgeSegment& edge);

// Lax admissibility u_left >= s >= u_right.  Growing pairs and their trailing
// edges violate it; shrinking pairs and leading edges satisfy it.
bool lax_entropic(const EdgeSegment& edge);

// Smooth compactly supported bump
//   phi(t, x) = b((t - t_c)/r_t) * b((x - x_c)/r_x),  b(s) = exp(-1/(1-s^2))
// with support [t_c - r_t, t_c + r_t] x [x_c - r_x, x_c + r_x].
struct TestFunction {
  double t_c = 0, x_c = 0, r_t = 1, r_x = 1;

  double value(double t, double x) const;
  double dt(double t, double x) const;
  double dx(double t, double x) const;
};

// Composite-midpoint approximation of  integral of u*phi_t + (u^2/2)*phi_x
// over the support of phi, which vanishes for weak solutions when phi vanishes
// on the boundary of the frame window.  The uniform cells have width exactly
// grid_step on both axes and are anchored to the chart (time midpoints and
// space boundaries at integer multiples of the step), so whenever grid_step
// divides 1/2 the piecewise-constant rows are resolved exactly and the
// returned value converges at second order.
double weak_residual(const std::vector<BurgersFrame>& frames, const TestFunction& phi,
                     double grid_step);

// First mismatch (if any) when running the exclusion flow and the
// spin/activation flow side by side through the pair map for T steps.
struct ConjugacyReport {
  bool ok = true;
  std::int64_t failed_step = -1;  // step index whose output mismatched
  std::string reason;
};
ConjugacyReport conjugacy_check(const TasepConfig& initial, const Noise& field,
                                std::int64_t T);

// Exhaustive check on a ring of size L that the pair map is a bijection from
// occupancy configurations onto valid spin/activation configurations: the
// forward map is injective, inverse(forward) is the identity, and the image
// is exactly the valid set (enumerated independently over all 3^L spin
// vectors plus the two labelled vacua).
struct BijectionReport {
  bool ok = true;
  std::uint64_t configurations = 0;  // 2^L occupancies checked
  std::uint64_t valid_targets = 0;   // independently enumerated valid set
  std::string reason;
};
BijectionReport bijection_check(int L);

// act(x) == occ(x) * (1 - occ(x+1)) for cfg = pair_forward(eta), checked on
// every site with both reads available.
bool key_identity_holds(const TasepConfig& eta, const AbdfConfig& cfg);

// Every maximal alternating segment obeys the parity law: equal end spins
// need an even inter-anchor gap, opposite end spins an odd gap.
bool parity_law_holds(const AbdfConfig& cfg);

}  // namespace qpflow

#endif  // QPFLOW_VERIFICATION_HPP
