#include "ice/env.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ice {

Environment::Environment(std::vector<std::string> players,
                         std::vector<std::vector<std::string>> actions,
                         std::vector<std::vector<Rat>> payoffs)
    : players_(std::move(players)), actions_(std::move(actions)), payoffs_(std::move(payoffs)) {
  int n = static_cast<int>(players_.size());
  if (n < 2) throw std::invalid_argument("environment needs at least two players");
  if (static_cast<int>(actions_.size()) != n || static_cast<int>(payoffs_.size()) != n)
    throw std::invalid_argument("players, actions, payoffs must agree in length");
  if (std::set<std::string>(players_.begin(), players_.end()).size() != players_.size())
    throw std::invalid_argument("duplicate player name");

  num_profiles_ = 1;
  for (int i = 0; i < n; ++i) {
    if (actions_[i].empty()) throw std::invalid_argument("empty action set");
    std::set<std::string> seen(actions_[i].begin(), actions_[i].end());
    if (seen.size() != actions_[i].size())
      throw std::invalid_argument("duplicate action label for " + players_[i]);
    num_profiles_ *= static_cast<int>(actions_[i].size());
  }
  // Row-major: player 0 varies slowest.
  strides_.assign(n, 1);
  for (int i = n - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * static_cast<int>(actions_[i + 1].size());

  for (int i = 0; i < n; ++i)
    if (static_cast<int>(payoffs_[i].size()) != num_profiles_)
      throw std::invalid_argument("payoff tensor not total for " + players_[i]);
}

int Environment::action_index(int i, const std::string& label) const {
  for (int k = 0; k < num_actions(i); ++k)
    if (actions_[i][k] == label) return k;
  return -1;
}

int Environment::flat_index(const Profile& a) const {
  if (static_cast<int>(a.size()) != num_players())
    throw std::invalid_argument("profile arity mismatch");
  int flat = 0;
  for (int i = 0; i < num_players(); ++i) {
    if (a[i] < 0 || a[i] >= num_actions(i)) throw std::out_of_range("action index out of range");
    flat += a[i] * strides_[i];
  }
  return flat;
}

Profile Environment::profile(int flat) const {
  Profile a(num_players());
  for (int i = 0; i < num_players(); ++i) {
    a[i] = flat / strides_[i] % num_actions(i);
  }
  return a;
}

int Environment::replace(int flat, int i, int ai) const {
  int cur = flat / strides_[i] % num_actions(i);
  return flat + (ai - cur) * strides_[i];
}

JointDistribution::JointDistribution(const Environment& env, std::vector<Rat> weights)
    : w(std::move(weights)) {
  if (static_cast<int>(w.size()) != env.num_profiles())
    throw std::invalid_argument("distribution length mismatch");
  Rat total = 0;
  for (const Rat& v : w) {
    if (v < 0) throw std::invalid_argument("negative probability");
    total += v;
  }
  if (total != 1)
    throw std::invalid_argument("distribution sums to " + to_string(total) + ", not 1");
}

ActionSubspace full_subspace(const Environment& env) {
  ActionSubspace s;
  s.parts.resize(env.num_players());
  for (int i = 0; i < env.num_players(); ++i)
    for (int a = 0; a < env.num_actions(i); ++a) s.parts[i].push_back(a);
  return s;
}

ActionSubspace make_subspace(const Environment& env, std::vector<std::vector<int>> parts) {
  if (static_cast<int>(parts.size()) != env.num_players())
    throw std::invalid_argument("subspace arity mismatch");
  ActionSubspace s;
  s.parts = std::move(parts);
  for (int i = 0; i < env.num_players(); ++i) {
    auto& p = s.parts[i];
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (!p.empty() && (p.front() < 0 || p.back() >= env.num_actions(i)))
      throw std::out_of_range("subspace action out of range");
  }
  return s;
}

bool subspace_contains(const ActionSubspace& a, const ActionSubspace& b) {
  if (a.parts.size() != b.parts.size()) return false;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (!std::includes(a.parts[i].begin(), a.parts[i].end(), b.parts[i].begin(),
                       b.parts[i].end()))
      return false;
  return true;
}

ActionSubspace subspace_union(const ActionSubspace& a, const ActionSubspace& b) {
  ActionSubspace out;
  out.parts.resize(a.parts.size());
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    std::set_union(a.parts[i].begin(), a.parts[i].end(), b.parts[i].begin(), b.parts[i].end(),
                   std::back_inserter(out.parts[i]));
  return out;
}

bool subspace_has(const ActionSubspace& s, int player, int action) {
  const auto& p = s.parts[player];
  return std::binary_search(p.begin(), p.end(), action);
}

long subspace_profile_count(const ActionSubspace& s) {
  long count = 1;
  for (const auto& p : s.parts) count *= static_cast<long>(p.size());
  return count;
}

std::string describe_subspace(const Environment& env, const ActionSubspace& s) {
  std::string out;
  for (int i = 0; i < env.num_players(); ++i) {
    if (i) out += " x ";
    out += "{";
    for (std::size_t k = 0; k < s.parts[i].size(); ++k) {
      if (k) out += ",";
      out += env.action_label(i, s.parts[i][k]);
    }
    out += "}";
  }
  return out;
}

ThreatSpace threats_all(const Environment& env) { return ThreatSpace{full_subspace(env)}; }

ThreatSpace threats_none(const Environment& env) {
  ThreatSpace t;
  t.base.parts.resize(env.num_players());
  return t;
}

std::vector<Rat> marginal(const Environment& env, const JointDistribution& alpha, int i) {
  std::vector<Rat> m(env.num_actions(i), Rat(0));
  for (int flat = 0; flat < env.num_profiles(); ++flat)
    m[env.profile(flat)[i]] += alpha[flat];
  return m;
}

Rat expected_payoff(const Environment& env, const JointDistribution& alpha, int i) {
  Rat total = 0;
  for (int flat = 0; flat < env.num_profiles(); ++flat) total += alpha[flat] * env.payoff(i, flat);
  return total;
}

std::vector<int> support(const JointDistribution& alpha) {
  std::vector<int> s;
  for (int flat = 0; flat < static_cast<int>(alpha.w.size()); ++flat)
    if (alpha[flat] > 0) s.push_back(flat);
  return s;
}

ActionSubspace support_subspace(const Environment& env, const JointDistribution& alpha) {
  std::vector<std::vector<int>> parts(env.num_players());
  for (int flat : support(alpha)) {
    Profile a = env.profile(flat);
    for (int i = 0; i < env.num_players(); ++i) parts[i].push_back(a[i]);
  }
  return make_subspace(env, std::move(parts));
}

ActionSubspace effective_threats(const Environment& env, const ThreatSpace& threats,
                                 const JointDistribution& alpha) {
  return subspace_union(threats.base, support_subspace(env, alpha));
}

ActionSubspace effective_threats(const Environment& env, const ThreatSpace& threats,
                                 const ActionSubspace& support) {
  (void)env;
  return subspace_union(threats.base, support);
}

JointDistribution point_mass(const Environment& env, const Profile& a) {
  std::vector<Rat> w(env.num_profiles(), Rat(0));
  w[env.flat_index(a)] = 1;
  return JointDistribution(env, std::move(w));
}

JointDistribution uniform_distribution(const Environment& env) {
  std::vector<Rat> w(env.num_profiles(), rat(1, env.num_profiles()));
  return JointDistribution(env, std::move(w));
}

}  // namespace ice
