#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "ice/elimination.hpp"
#include "ice/equilibrium.hpp"

namespace ice {

// The slice that kept an action alive during one operator application: a
// support product whose slack program came out strictly positive, and a
// unit-mass member supported exactly there.
struct SupportWitness {
  ActionSubspace support;
  std::vector<Rat> alpha;  // by flat profile

  bool operator==(const SupportWitness&) const = default;
};

// One operator application. witnesses[i][k] certifies positive mass for the
// k-th action of space.parts[i].
struct OperatorStep {
  ActionSubspace space;
  std::vector<std::vector<SupportWitness>> witnesses;

  bool operator==(const OperatorStep&) const = default;
};

// Applications of the supportable-action operator from the full space down.
// Spaces decrease weakly; the last step repeats its predecessor's space,
// witnessing the fixed point. Never longer than the total action count plus
// one.
struct OperatorTrace {
  std::vector<OperatorStep> steps;

  bool operator==(const OperatorTrace&) const = default;
};

struct ClassificationFlags {
  bool no_strict_dominance = false;   // r_set keeps the full space
  bool no_absolute_dominance = false;  // nothing absolutely dominated at full A
  bool generic_2x2 = false;            // two players, two actions, no repeated payoffs

  bool operator==(const ClassificationFlags&) const = default;
};

// Implementability verdicts for one target distribution. The threat space
// tells the notions apart: the full space for nash, the forward-compatible
// fixed point for the quasi-sequential test, the operator limit joined with
// the undominated set for the sequential sufficient condition, and the
// absolute-dominance survivors for the generic two-by-two criterion.
struct Classification {
  bool nash = false;
  bool quasi_sequential = false;
  bool sequential_sufficient = false;
  bool sequential_necessary = false;             // equals quasi_sequential
  std::optional<bool> sequential_2x2;            // set exactly when generic_2x2
  ClassificationFlags flags;

  bool operator==(const Classification&) const = default;
};

// Actions supportable by some equilibrium under threats within union r: one
// slack program per support product of the full space, an action surviving
// iff a positive slice puts mass on it.
ActionSubspace b_operator(const Environment& env, const ActionSubspace& within,
                          const ActionSubspace& r,
                          PunishmentMode mode = PunishmentMode::WorstInThreats,
                          Exec exec = Exec::Parallel);

// Iterates b_operator from the full space to its largest fixed point, using
// the undominated set (or its iterated variant) as the standing threats.
// Verifies decrease, the stabilization bound, nonemptiness, and on two-player
// games with at most three actions each that no self-supporting subspace
// escapes the limit.
std::pair<ActionSubspace, OperatorTrace> a_infinity(
    const Environment& env, PunishmentMode mode = PunishmentMode::WorstInThreats,
    bool iterated_r = false, Exec exec = Exec::Parallel);

// iterated_r swaps the iterated elimination variant in for the plain
// undominated set wherever r enters; defaults stay with the plain reading.
Classification classify(const Environment& env, const JointDistribution& alpha,
                        PunishmentMode mode = PunishmentMode::WorstInThreats,
                        bool iterated_r = false, Exec exec = Exec::Parallel);

}  // namespace ice
