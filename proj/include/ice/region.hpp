#pragma once
#include <vector>

#include "ice/equilibrium.hpp"

namespace ice {

struct PayoffPoint {
  Rat u0, u1;

  bool operator==(const PayoffPoint&) const = default;
};

// Exact vertex lists of two-player payoff polygons, counterclockwise with
// the lexicographically least vertex first. A segment comes back as its two
// endpoints, a point as a single vertex. Each region is computed by
// support-function maximization over a fan of integer directions (resolution
// rounded down to a multiple of four, at least the four axes), then edge
// normals are re-solved until no direction escapes the polygon, so the
// result does not depend on the resolution.
//
// The equilibrium and rationality regions require the full threat space:
// only then are the punishment floors independent of the support and the
// whole region one affine system. Narrower threats raise an error pointing
// at the per-support slack program.
std::vector<PayoffPoint> ice_payoff_region(const Environment& env, const ThreatSpace& threats,
                                           PunishmentMode mode = PunishmentMode::WorstInThreats,
                                           int resolution = 16, Exec exec = Exec::Parallel);

std::vector<PayoffPoint> ce_payoff_region(const Environment& env, int resolution = 16,
                                          Exec exec = Exec::Parallel);

std::vector<PayoffPoint> ir_payoff_region(const Environment& env, const ThreatSpace& threats,
                                          PunishmentMode mode = PunishmentMode::WorstInThreats,
                                          int resolution = 16, Exec exec = Exec::Parallel);

// Convex hull of the payoff pairs of the pure equilibria; empty when none
// exist.
std::vector<PayoffPoint> nash_pure_hull(const Environment& env);

}  // namespace ice
