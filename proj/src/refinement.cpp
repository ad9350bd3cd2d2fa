#include "ice/refinement.hpp"

#include <stdexcept>
#include <utility>

namespace ice {

namespace {

// Nonempty per-player subsets combined into products; subset masks ascend
// within each player and player 0 is the slowest digit, so the order is
// reproducible.
std::vector<ActionSubspace> support_products(const Environment& env) {
  int n = env.num_players();
  std::vector<std::vector<std::vector<int>>> subsets(n);
  for (int i = 0; i < n; ++i) {
    int m = env.num_actions(i);
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<int> part;
      for (int a = 0; a < m; ++a)
        if (mask >> a & 1) part.push_back(a);
      subsets[i].push_back(std::move(part));
    }
  }
  std::vector<ActionSubspace> products;
  std::vector<std::size_t> pos(n, 0);
  for (;;) {
    std::vector<std::vector<int>> parts(n);
    for (int i = 0; i < n; ++i) parts[i] = subsets[i][pos[i]];
    products.push_back(make_subspace(env, std::move(parts)));
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++pos[i] < subsets[i].size()) break;
      pos[i] = 0;
    }
    if (i < 0) break;
  }
  return products;
}

// Collapses a slice point to a unit-mass profile distribution. The slack
// variable is last; positive slack guarantees positive total mass.
std::vector<Rat> fold_alpha(const Environment& env, const std::vector<Rat>& point) {
  int num_orderings = static_cast<int>((point.size() - 1) / env.num_profiles());
  std::vector<Rat> alpha(env.num_profiles(), 0);
  Rat mass = 0;
  for (int flat = 0; flat < env.num_profiles(); ++flat) {
    for (int ord = 0; ord < num_orderings; ++ord) alpha[flat] += point[flat * num_orderings + ord];
    mass += alpha[flat];
  }
  for (Rat& v : alpha) v /= mass;
  return alpha;
}

OperatorStep apply_operator(const Environment& env, const ActionSubspace& within,
                            const ActionSubspace& r, PunishmentMode mode, Exec exec) {
  ThreatSpace threats{subspace_union(within, r)};
  std::vector<ActionSubspace> products = support_products(env);
  std::vector<char> positive(products.size(), 0);
  std::vector<std::vector<Rat>> members(products.size());
  parallel_for(products.size(), exec, [&](std::size_t k) {
    LpResult res = is_ice_variable(env, threats, products[k], {}, nullptr, mode);
    if (res.status == LpStatus::Optimal && res.value > 0) {
      positive[k] = 1;
      members[k] = fold_alpha(env, res.point);
    }
  });

  // first positive slice containing each action, in product order
  std::vector<std::vector<int>> found(env.num_players());
  for (int i = 0; i < env.num_players(); ++i) found[i].assign(env.num_actions(i), -1);
  for (std::size_t k = 0; k < products.size(); ++k) {
    if (!positive[k]) continue;
    for (int i = 0; i < env.num_players(); ++i)
      for (int a : products[k].parts[i])
        if (found[i][a] < 0) found[i][a] = static_cast<int>(k);
  }

  OperatorStep step;
  step.space.parts.resize(env.num_players());
  step.witnesses.resize(env.num_players());
  for (int i = 0; i < env.num_players(); ++i)
    for (int a = 0; a < env.num_actions(i); ++a) {
      int k = found[i][a];
      if (k < 0) continue;
      step.space.parts[i].push_back(a);
      step.witnesses[i].push_back({products[k], members[k]});
    }
  return step;
}

}  // namespace

ActionSubspace b_operator(const Environment& env, const ActionSubspace& within,
                          const ActionSubspace& r, PunishmentMode mode, Exec exec) {
  return apply_operator(env, within, r, mode, exec).space;
}

std::pair<ActionSubspace, OperatorTrace> a_infinity(const Environment& env, PunishmentMode mode,
                                                    bool iterated_r, Exec exec) {
  ActionSubspace r = iterated_r ? r_set_iterated(env, exec).result : r_set(env, exec);
  int bound = 1;
  for (int i = 0; i < env.num_players(); ++i) bound += env.num_actions(i);

  OperatorTrace trace;
  ActionSubspace current = full_subspace(env);
  for (;;) {
    if (static_cast<int>(trace.steps.size()) > bound)
      throw std::logic_error("supportable-action iteration exceeded its stabilization bound");
    OperatorStep step = apply_operator(env, current, r, mode, exec);
    if (!subspace_contains(current, step.space))
      throw std::logic_error("supportable-action operator grew the space");
    bool fixed = step.space == current;
    trace.steps.push_back(std::move(step));
    if (fixed) break;
    current = trace.steps.back().space;
  }
  for (int i = 0; i < env.num_players(); ++i)
    if (current.parts[i].empty())
      throw std::logic_error("supportable-action limit emptied a component");

  // Exhaustive maximality sweep where it stays cheap; larger shapes are
  // covered by the property tests.
  if (env.num_players() == 2 && env.num_actions(0) * env.num_actions(1) <= 4) {
    for (const ActionSubspace& sub : support_products(env))
      if (subspace_contains(b_operator(env, sub, r, mode, exec), sub) &&
          !subspace_contains(current, sub))
        throw std::logic_error("self-supporting subspace escaped the limit");
  }

  return {std::move(current), std::move(trace)};
}

Classification classify(const Environment& env, const JointDistribution& alpha,
                        PunishmentMode mode, bool iterated_r, Exec exec) {
  Classification out;
  out.nash = is_ice(env, alpha, threats_all(env), mode).verdict;

  EliminationTrace fcr = fcr_set(env, exec);
  out.quasi_sequential = is_ice(env, alpha, ThreatSpace{fcr.result}, mode).verdict;
  out.sequential_necessary = out.quasi_sequential;

  ActionSubspace r = iterated_r ? r_set_iterated(env, exec).result : r_set(env, exec);
  ActionSubspace limit = a_infinity(env, mode, iterated_r, exec).first;
  out.sequential_sufficient =
      is_ice(env, alpha, ThreatSpace{subspace_union(limit, r)}, mode).verdict;

  EliminationTrace cr = cr_set(env);
  out.flags.no_absolute_dominance = cr.removals.empty();
  out.flags.no_strict_dominance = r_set(env, exec) == full_subspace(env);

  bool square = env.num_players() == 2 && env.num_actions(0) == 2 && env.num_actions(1) == 2;
  bool generic = square;
  for (int i = 0; generic && i < env.num_players(); ++i)
    for (int f = 0; generic && f < env.num_profiles(); ++f)
      for (int g = f + 1; g < env.num_profiles(); ++g)
        if (env.payoff(i, f) == env.payoff(i, g)) {
          generic = false;
          break;
        }
  out.flags.generic_2x2 = generic;
  if (generic) out.sequential_2x2 = is_ice(env, alpha, ThreatSpace{cr.result}, mode).verdict;
  return out;
}

}  // namespace ice
