#pragma once
#include <string>
#include <vector>

#include "ice/rational.hpp"

namespace ice {

// One action index per player, in player order.
using Profile = std::vector<int>;

// Finite strategic environment: players, per-player action labels, and an
// exact-rational payoff tensor. Immutable after construction; profiles are
// addressed by a flat row-major index (player 0 slowest) so every module
// enumerates them in the same order.
class Environment {
 public:
  Environment(std::vector<std::string> players,
              std::vector<std::vector<std::string>> actions,
              std::vector<std::vector<Rat>> payoffs);

  int num_players() const { return static_cast<int>(players_.size()); }
  int num_actions(int i) const { return static_cast<int>(actions_[i].size()); }
  int num_profiles() const { return num_profiles_; }

  const std::string& player_name(int i) const { return players_[i]; }
  const std::vector<std::string>& action_labels(int i) const { return actions_[i]; }
  const std::string& action_label(int i, int ai) const { return actions_[i][ai]; }
  // -1 if the label is not one of player i's actions.
  int action_index(int i, const std::string& label) const;

  const Rat& payoff(int i, int flat) const { return payoffs_[i][flat]; }
  const Rat& payoff(int i, const Profile& a) const { return payoffs_[i][flat_index(a)]; }

  int flat_index(const Profile& a) const;
  Profile profile(int flat) const;
  // flat index of the profile that agrees with a except player i plays ai.
  int replace(int flat, int i, int ai) const;

  bool operator==(const Environment& other) const = default;

 private:
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::vector<Rat>> payoffs_;  // [player][flat profile]
  std::vector<int> strides_;
  int num_profiles_;
};

// Distribution over action profiles, indexed by flat profile. Validated on
// construction: nonnegative weights with exact total 1.
struct JointDistribution {
  std::vector<Rat> w;

  JointDistribution(const Environment& env, std::vector<Rat> weights);

  const Rat& operator[](int flat) const { return w[flat]; }
  bool operator==(const JointDistribution&) const = default;
};

// Product of per-player action subsets (the lattice the elimination and
// refinement operators walk). Components are sorted, may be empty.
struct ActionSubspace {
  std::vector<std::vector<int>> parts;

  bool operator==(const ActionSubspace&) const = default;
};

ActionSubspace full_subspace(const Environment& env);
ActionSubspace make_subspace(const Environment& env, std::vector<std::vector<int>> parts);
bool subspace_contains(const ActionSubspace& a, const ActionSubspace& b);  // b subseteq a
ActionSubspace subspace_union(const ActionSubspace& a, const ActionSubspace& b);
bool subspace_has(const ActionSubspace& s, int player, int action);
long subspace_profile_count(const ActionSubspace& s);
std::string describe_subspace(const Environment& env, const ActionSubspace& s);

// Declared additional credible threats B. What the incentive constraints see
// is always the effective set B* = B_i on union supp alpha_i.
struct ThreatSpace {
  ActionSubspace base;
};

ThreatSpace threats_all(const Environment& env);
ThreatSpace threats_none(const Environment& env);

std::vector<Rat> marginal(const Environment& env, const JointDistribution& alpha, int i);
Rat expected_payoff(const Environment& env, const JointDistribution& alpha, int i);
std::vector<int> support(const JointDistribution& alpha);  // flat indices, ascending
ActionSubspace support_subspace(const Environment& env, const JointDistribution& alpha);
ActionSubspace effective_threats(const Environment& env, const ThreatSpace& threats,
                                 const JointDistribution& alpha);
ActionSubspace effective_threats(const Environment& env, const ThreatSpace& threats,
                                 const ActionSubspace& support);

JointDistribution point_mass(const Environment& env, const Profile& a);
JointDistribution uniform_distribution(const Environment& env);

}  // namespace ice
