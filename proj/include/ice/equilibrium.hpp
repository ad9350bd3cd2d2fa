#pragma once
#include <vector>

#include "ice/env.hpp"
#include "ice/lp.hpp"

namespace ice {

// Which floor a first mover's deviation is held to. WorstInThreats is the
// baseline min over the effective threats. BestResponseOnly restricts the
// minimum to the opponent's best responses to the deviation (publicly
// observed deviations). Minimax models a punishment plan fixed before the
// deviation is seen: the opponent mixes over the effective threats knowing
// only the recommendation, the deviator best-responds among his remaining
// actions, and the floor is the value of that zero-sum game, the same for
// every deviation from a given recommendation. With two actions per player
// the single remaining action makes Minimax coincide with WorstInThreats.
// The latter two modes are defined for two players only.
enum class PunishmentMode { WorstInThreats, BestResponseOnly, Minimax };

// Permutations of {0..n-1} in lexicographic order; index 0 is the identity.
// For n=2, ordering 0 means player 0 moves first.
std::vector<std::vector<int>> all_orderings(int n);

// Enumeration guard for ordering-indexed systems; overridden by the
// ICE_LAB_SIZE_CAP environment variable.
long default_size_cap();

// rec is the recommendation the deviation departs from; only Minimax needs
// it (to exclude compliance from the punishment game) and the other modes
// ignore it.
Rat worst_punishment(const Environment& env, int i, int dev, const ActionSubspace& bstar,
                     PunishmentMode mode, int rec = -1);

// Value a deviator is held to under a given mover ordering: players before i
// stand at their components of flat, players after i jointly minimize over
// their bstar components, i plays dev. With nobody after i this is the plain
// deviation payoff.
Rat dev_floor(const Environment& env, int i, int dev, int flat,
              const std::vector<int>& ordering, const ActionSubspace& bstar,
              PunishmentMode mode);

// Conditional mover-order distribution: one weight row per flat profile,
// indexed like all_orderings. An empty row means undefined (allowed off the
// support of the target distribution).
struct OrderingDistribution {
  std::vector<std::vector<Rat>> rows;

  bool operator==(const OrderingDistribution&) const = default;
};

OrderingDistribution uniform_orderings(const Environment& env);
// Two players: per-profile probability that player 0 moves first.
OrderingDistribution theta_first_mover(const Environment& env, std::vector<Rat> p0_first);
bool valid_theta(const Environment& env, const JointDistribution& alpha,
                 const OrderingDistribution& theta);

// Joint distribution over (profile, ordering); layout profile-major,
// ordering-minor, matching the variable order of every generated system.
struct GammaVariable {
  int num_orderings = 0;
  std::vector<Rat> w;

  const Rat& at(int flat, int ord) const { return w[flat * num_orderings + ord]; }
  Rat profile_mass(int flat) const;
};

GammaVariable make_gamma(const Environment& env, const JointDistribution& alpha,
                         const OrderingDistribution& theta);
// theta(ord|a) = gamma(a,ord)/alpha(a) on the support; rows elsewhere empty.
OrderingDistribution theta_from_gamma(const Environment& env, const JointDistribution& alpha,
                                      const GammaVariable& gamma);

// Direct incentive check for (alpha, theta, threats): one inequality per
// (player, recommendation, deviation), no solver involved.
bool incentive_compatible(const Environment& env, const JointDistribution& alpha,
                          const OrderingDistribution& theta, const ThreatSpace& threats,
                          PunishmentMode mode);

// Feasibility system over gamma for two players, written directly from the
// two-ordering incentive rows. Exactly one of alpha/support must be given:
// a fixed alpha adds one mass row and per-profile marginal equalities; a
// support product adds the mass row and zero rows outside the product.
// Three and more players delegate to n_player_system.
LinearSystem build_ice_system(const Environment& env, const JointDistribution* alpha,
                              const ThreatSpace& threats, PunishmentMode mode,
                              const ActionSubspace* support = nullptr);

// The general-n system over gamma indexed by profile x ordering; reduces to
// the same constraint matrix as build_ice_system when n=2.
LinearSystem n_player_system(const Environment& env, const JointDistribution* alpha,
                             const ThreatSpace& threats, PunishmentMode mode,
                             const ActionSubspace* support = nullptr,
                             long size_cap = default_size_cap());

struct IceCertificate {
  bool verdict = false;
  LinearSystem system;         // the solved feasibility system
  GammaVariable gamma;         // member: witness distribution
  OrderingDistribution theta;  // member: recovered on supp alpha
  std::vector<Rat> farkas;     // non-member: infeasibility multipliers
};

IceCertificate is_ice(const Environment& env, const JointDistribution& alpha,
                      const ThreatSpace& threats,
                      PunishmentMode mode = PunishmentMode::WorstInThreats);

// theta == 0 limit: no punishments, plain correlated-equilibrium rows.
bool is_correlated_eq(const Environment& env, const JointDistribution& alpha);

// theta == 1 limit: every deviation is held to the worst-punishment floor.
bool is_individually_rational(const Environment& env, const JointDistribution& alpha,
                              const ThreatSpace& threats,
                              PunishmentMode mode = PunishmentMode::WorstInThreats);

// Affine side condition on alpha, coefficients indexed by flat profile.
struct AlphaConstraint {
  std::vector<Rat> coef;
  Rel rel;
  Rat rhs;
};

// Fixed-support slice: gamma constrained to the support product, effective
// threats base-union-support, plus a slack variable t (last variable) with
// every supported marginal >= t. With unit_mass the gamma total is pinned to
// 1 (distribution semantics for optimizing over the slice); without it the
// total is <= 1, making the system a cone slice that is always feasible.
LinearSystem build_support_slice(const Environment& env, const ThreatSpace& threats,
                                 const ActionSubspace& support,
                                 const std::vector<AlphaConstraint>& extra, bool unit_mass,
                                 PunishmentMode mode = PunishmentMode::WorstInThreats,
                                 long size_cap = default_size_cap());

// Existence of an ICE whose support is exactly the given product: maximizes
// t over the cone slice; optimum t > 0 if and only if such an ICE exists
// (scale any witness down to mass <= 1 and back up). With an alpha objective
// the slice is solved at unit mass instead and the optimum is over ICE
// distributions supported inside the product (exact when the effective
// threats do not depend on the support, e.g. threats = full).
LpResult is_ice_variable(const Environment& env, const ThreatSpace& threats,
                         const ActionSubspace& support,
                         const std::vector<AlphaConstraint>& extra = {},
                         const std::vector<Rat>* alpha_objective = nullptr,
                         PunishmentMode mode = PunishmentMode::WorstInThreats);

}  // namespace ice
