#pragma once
#include <optional>
#include <vector>

#include "ice/env.hpp"
#include "ice/parallel.hpp"

namespace ice {

// Why an action left the surviving set. AbsoluteDominance is pure-vs-pure
// (best case of the removed action below the worst case of the dominator),
// StrictDominance is the classical mixed-dominance screen, FcrDominance is
// the forward-compatible screen where the dominating mixture also has to
// beat the removed action on every profile outside the current subspace.
enum class RemovalReason { AbsoluteDominance, StrictDominance, FcrDominance };

struct Removal {
  int round;  // 1-based sweep index
  int player;
  int action;
  RemovalReason reason;
  int by_action = -1;           // dominating pure action, AbsoluteDominance only
  std::vector<Rat> by_mixture;  // dominating mixture over the player's actions, otherwise

  bool operator==(const Removal&) const = default;
};

// Ordered removal log plus the surviving subspace. Removals within one round
// are listed player-major, action-minor, so the log is deterministic.
struct EliminationTrace {
  std::vector<Removal> removals;
  ActionSubspace result;
};

// One belief per own action, each a distribution over the opponents'
// profiles. Row r is stored on the full profile grid with player i's
// coordinate pinned to r; every other entry is zero.
struct CounterfactualBelief {
  int player = 0;
  std::vector<std::vector<Rat>> rows;  // [own action][flat profile]
};

// True when every payoff of a_i against within's opponent components stays
// strictly above every payoff of b_i against them. Requires nonempty
// opponent components.
bool absolutely_dominates(const Environment& env, int i, int a_i, int b_i,
                          const ActionSubspace& within);

// Optimal slack of the mixed-dominance program for a_i inside within: a
// mixture over within's own component maximizing its worst edge over a_i
// against within's opponent profiles. Positive exactly when a_i is strictly
// dominated there.
Rat strict_dominance_slack(const Environment& env, int i, int a_i, const ActionSubspace& within);

// Optimal slack of the forward-compatible dominance program for a_i at
// within. The mixture ranges over the player's full action set and must beat
// a_i both on every opponent profile outside within and on one aggregated
// column where a_i is worth its best case over within and every other action
// its worst case. Positive exactly when a_i drops out of fcr_step(within).
Rat fcr_dominance_slack(const Environment& env, int i, int a_i, const ActionSubspace& within);

// Iterated removal of absolutely dominated actions, all current ones per
// round. The result does not depend on removal order or batching.
EliminationTrace cr_set(const Environment& env);

// Per player, the actions not strictly dominated by a mixture when opponents
// range over their full action sets. No iteration.
ActionSubspace r_set(const Environment& env, Exec exec = Exec::Parallel);

// Iterated strict dominance: rounds of r-style screens against the current
// subspace until a fixed point.
EliminationTrace r_set_iterated(const Environment& env, Exec exec = Exec::Parallel);

// One forward-compatible screening round: the actions of within that are
// FC-rationalizable with respect to within. Monotone in within.
ActionSubspace fcr_step(const Environment& env, const ActionSubspace& within,
                        Exec exec = Exec::Parallel);

// Iterate fcr_step from the full space down to its largest fixed point.
EliminationTrace fcr_set(const Environment& env, Exec exec = Exec::Parallel);

// A counterfactual belief certifying that a_i is rationalizable at within:
// the on-recommendation row is the point mass on the best opponent profile
// for a_i, every other row the point mass on the worst one for that action
// (lowest flat index on ties). Empty exactly when a_i is absolutely
// dominated inside within.
std::optional<CounterfactualBelief> c_rationalizable_witness(const Environment& env, int i,
                                                             int a_i,
                                                             const ActionSubspace& within);

}  // namespace ice
