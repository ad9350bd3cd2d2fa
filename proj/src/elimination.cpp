#include "ice/elimination.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "ice/lp.hpp"

namespace ice {

namespace {

void require_opponents(const Environment& env, int i, const ActionSubspace& within) {
  for (int j = 0; j < env.num_players(); ++j) {
    if (j == i) continue;
    if (within.parts[j].empty())
      throw std::invalid_argument("empty opponent component for " + env.player_name(j));
  }
}

// Visits every profile agreeing with `own` at player i whose other
// coordinates lie in within, in increasing flat order.
template <typename F>
void each_opponent_profile(const Environment& env, int i, int own, const ActionSubspace& within,
                           F&& fn) {
  int n = env.num_players();
  Profile p(n);
  std::vector<int> pos(n, 0);
  for (int j = 0; j < n; ++j) p[j] = j == i ? own : within.parts[j][0];
  for (;;) {
    fn(p);
    int j = n - 1;
    for (; j >= 0; --j) {
      if (j == i) continue;
      const auto& part = within.parts[j];
      if (++pos[j] < static_cast<int>(part.size())) {
        p[j] = part[pos[j]];
        break;
      }
      pos[j] = 0;
      p[j] = part[0];
    }
    if (j < 0) break;
  }
}

struct ScreenResult {
  Rat slack;
  std::vector<Rat> mixture;  // over the player's full action set
};

// Maps the LP point back to a full-length mixture; vars[k] names the action
// behind LP variable k.
std::vector<Rat> lift_mixture(const Environment& env, int i, const std::vector<int>& vars,
                              const std::vector<Rat>& point) {
  std::vector<Rat> mix(env.num_actions(i), 0);
  for (std::size_t k = 0; k < vars.size(); ++k) mix[vars[k]] = point[k];
  return mix;
}

LinearSystem mixture_system(const Environment& env, int i, const std::vector<int>& vars,
                            int* eps_out) {
  LinearSystem sys;
  for (int b : vars) sys.add_var("m(" + env.action_label(i, b) + ")");
  sys.add_var("slack", false);
  *eps_out = sys.num_vars - 1;
  std::vector<Rat> ones(sys.num_vars, 0);
  for (std::size_t k = 0; k < vars.size(); ++k) ones[k] = 1;
  sys.add(std::move(ones), Rel::Eq, 1);
  return sys;
}

// Both screens are always feasible (any mixture with a low enough slack) and
// capped by at least one comparison row, so an optimum must exist.
Rat screen_optimum(const LinearSystem& sys, int eps, std::vector<Rat>* point) {
  std::vector<Rat> obj(sys.num_vars, 0);
  obj[eps] = 1;
  LpResult res = solve(sys, &obj, Sense::Max);
  if (res.status != LpStatus::Optimal) throw std::logic_error("dominance screen not optimal");
  *point = std::move(res.point);
  return res.value;
}

ScreenResult strict_screen(const Environment& env, int i, int a_i, const ActionSubspace& within) {
  require_opponents(env, i, within);
  const std::vector<int>& own = within.parts[i];
  if (own.empty()) throw std::invalid_argument("empty component for " + env.player_name(i));
  int eps = 0;
  LinearSystem sys = mixture_system(env, i, own, &eps);
  each_opponent_profile(env, i, a_i, within, [&](const Profile& p) {
    int flat = env.flat_index(p);
    std::vector<Rat> row(sys.num_vars, 0);
    for (std::size_t k = 0; k < own.size(); ++k)
      row[k] = env.payoff(i, env.replace(flat, i, own[k]));
    row[eps] = -1;
    sys.add(std::move(row), Rel::Ge, env.payoff(i, flat));
  });
  std::vector<Rat> point;
  Rat slack = screen_optimum(sys, eps, &point);
  return {std::move(slack), lift_mixture(env, i, own, point)};
}

// Dominance screen behind fcr_step. The mixture ranges over the full action
// set and must beat a_star strictly on every opponent profile outside within
// and on one aggregated column where a_star is worth its best case over
// within and every other action its worst case there.
ScreenResult fcr_screen(const Environment& env, int i, int a_star, const ActionSubspace& within) {
  require_opponents(env, i, within);
  int m = env.num_actions(i);
  std::vector<int> all(m);
  for (int b = 0; b < m; ++b) all[b] = b;

  std::vector<Rat> worst_case(m);
  Rat best_case;
  bool first = true;
  each_opponent_profile(env, i, 0, within, [&](const Profile& p) {
    int flat = env.flat_index(p);
    for (int b = 0; b < m; ++b) {
      const Rat& u = env.payoff(i, env.replace(flat, i, b));
      if (first || u < worst_case[b]) worst_case[b] = u;
    }
    const Rat& u_star = env.payoff(i, env.replace(flat, i, a_star));
    if (first || u_star > best_case) best_case = u_star;
    first = false;
  });

  int eps = 0;
  LinearSystem sys = mixture_system(env, i, all, &eps);
  {
    std::vector<Rat> row(sys.num_vars, 0);
    for (int b = 0; b < m; ++b) row[b] = b == a_star ? best_case : worst_case[b];
    row[eps] = -1;
    sys.add(std::move(row), Rel::Ge, best_case);
  }
  for (int flat = 0; flat < env.num_profiles(); ++flat) {
    Profile p = env.profile(flat);
    if (p[i] != 0) continue;  // one visit per opponent profile
    bool inside = true;
    for (int j = 0; inside && j < env.num_players(); ++j)
      if (j != i && !subspace_has(within, j, p[j])) inside = false;
    if (inside) continue;
    std::vector<Rat> row(sys.num_vars, 0);
    for (int b = 0; b < m; ++b) row[b] = env.payoff(i, env.replace(flat, i, b));
    row[eps] = -1;
    sys.add(std::move(row), Rel::Ge, env.payoff(i, env.replace(flat, i, a_star)));
  }
  std::vector<Rat> point;
  Rat slack = screen_optimum(sys, eps, &point);
  return {std::move(slack), lift_mixture(env, i, all, point)};
}

std::vector<std::pair<int, int>> member_cells(const ActionSubspace& within) {
  std::vector<std::pair<int, int>> cells;
  for (std::size_t i = 0; i < within.parts.size(); ++i)
    for (int a : within.parts[i]) cells.emplace_back(static_cast<int>(i), a);
  return cells;
}

void apply_batch(ActionSubspace& within, const std::vector<Removal>& batch) {
  for (const Removal& r : batch) {
    auto& part = within.parts[r.player];
    part.erase(std::remove(part.begin(), part.end(), r.action), part.end());
  }
}

}  // namespace

bool absolutely_dominates(const Environment& env, int i, int a_i, int b_i,
                          const ActionSubspace& within) {
  require_opponents(env, i, within);
  Rat worst_a, best_b;
  bool first = true;
  each_opponent_profile(env, i, a_i, within, [&](const Profile& p) {
    int flat = env.flat_index(p);
    const Rat& ua = env.payoff(i, flat);
    const Rat& ub = env.payoff(i, env.replace(flat, i, b_i));
    if (first || ua < worst_a) worst_a = ua;
    if (first || ub > best_b) best_b = ub;
    first = false;
  });
  return worst_a > best_b;
}

Rat strict_dominance_slack(const Environment& env, int i, int a_i, const ActionSubspace& within) {
  return strict_screen(env, i, a_i, within).slack;
}

Rat fcr_dominance_slack(const Environment& env, int i, int a_i, const ActionSubspace& within) {
  return fcr_screen(env, i, a_i, within).slack;
}

EliminationTrace cr_set(const Environment& env) {
  EliminationTrace trace;
  ActionSubspace within = full_subspace(env);
  for (int round = 1;; ++round) {
    std::vector<Removal> batch;
    for (int i = 0; i < env.num_players(); ++i) {
      for (int a : within.parts[i]) {
        for (int b : within.parts[i]) {
          if (b == a) continue;
          if (absolutely_dominates(env, i, b, a, within)) {
            batch.push_back({round, i, a, RemovalReason::AbsoluteDominance, b, {}});
            break;
          }
        }
      }
    }
    if (batch.empty()) break;
    apply_batch(within, batch);
    trace.removals.insert(trace.removals.end(), batch.begin(), batch.end());
  }
  trace.result = within;
  return trace;
}

ActionSubspace r_set(const Environment& env, Exec exec) {
  ActionSubspace full = full_subspace(env);
  auto cells = member_cells(full);
  std::vector<char> dominated(cells.size(), 0);
  parallel_for(cells.size(), exec, [&](std::size_t k) {
    dominated[k] = strict_dominance_slack(env, cells[k].first, cells[k].second, full) > 0;
  });
  std::vector<std::vector<int>> parts(env.num_players());
  for (std::size_t k = 0; k < cells.size(); ++k)
    if (!dominated[k]) parts[cells[k].first].push_back(cells[k].second);
  return make_subspace(env, std::move(parts));
}

EliminationTrace r_set_iterated(const Environment& env, Exec exec) {
  EliminationTrace trace;
  ActionSubspace within = full_subspace(env);
  for (int round = 1;; ++round) {
    auto cells = member_cells(within);
    std::vector<ScreenResult> hits(cells.size());
    parallel_for(cells.size(), exec, [&](std::size_t k) {
      hits[k] = strict_screen(env, cells[k].first, cells[k].second, within);
    });
    std::vector<Removal> batch;
    for (std::size_t k = 0; k < cells.size(); ++k)
      if (hits[k].slack > 0)
        batch.push_back({round, cells[k].first, cells[k].second, RemovalReason::StrictDominance,
                         -1, std::move(hits[k].mixture)});
    if (batch.empty()) break;
    apply_batch(within, batch);
    trace.removals.insert(trace.removals.end(), batch.begin(), batch.end());
  }
  trace.result = within;
  return trace;
}

ActionSubspace fcr_step(const Environment& env, const ActionSubspace& within, Exec exec) {
  for (int j = 0; j < env.num_players(); ++j)
    if (within.parts[j].empty())
      throw std::invalid_argument("empty component for " + env.player_name(j));
  auto cells = member_cells(within);
  std::vector<char> removed(cells.size(), 0);
  parallel_for(cells.size(), exec, [&](std::size_t k) {
    removed[k] = fcr_screen(env, cells[k].first, cells[k].second, within).slack > 0;
  });
  std::vector<std::vector<int>> parts(env.num_players());
  for (std::size_t k = 0; k < cells.size(); ++k)
    if (!removed[k]) parts[cells[k].first].push_back(cells[k].second);
  return make_subspace(env, std::move(parts));
}

EliminationTrace fcr_set(const Environment& env, Exec exec) {
  EliminationTrace trace;
  ActionSubspace within = full_subspace(env);
  for (int round = 1;; ++round) {
    auto cells = member_cells(within);
    std::vector<ScreenResult> hits(cells.size());
    parallel_for(cells.size(), exec, [&](std::size_t k) {
      hits[k] = fcr_screen(env, cells[k].first, cells[k].second, within);
    });
    std::vector<Removal> batch;
    for (std::size_t k = 0; k < cells.size(); ++k)
      if (hits[k].slack > 0)
        batch.push_back({round, cells[k].first, cells[k].second, RemovalReason::FcrDominance, -1,
                         std::move(hits[k].mixture)});
    if (batch.empty()) break;
    apply_batch(within, batch);
    trace.removals.insert(trace.removals.end(), batch.begin(), batch.end());
  }
  trace.result = within;
  // The loop only stops at a fixed point, and the absolute-dominance core
  // never reaches past it; both are cheap to re-check.
  if (!subspace_contains(fcr_step(env, within, exec), within) ||
      !subspace_contains(within, cr_set(env).result))
    throw std::logic_error("fc-rationalizable fixed point check failed");
  return trace;
}

std::optional<CounterfactualBelief> c_rationalizable_witness(const Environment& env, int i,
                                                             int a_i,
                                                             const ActionSubspace& within) {
  require_opponents(env, i, within);
  int m = env.num_actions(i);
  std::vector<int> pick(m, -1);
  std::vector<Rat> val(m);
  for (int b = 0; b < m; ++b) {
    each_opponent_profile(env, i, b, within, [&](const Profile& p) {
      int flat = env.flat_index(p);
      const Rat& u = env.payoff(i, flat);
      // strict comparisons keep the lowest flat index on ties
      if (pick[b] < 0 || (b == a_i ? u > val[b] : u < val[b])) {
        pick[b] = flat;
        val[b] = u;
      }
    });
  }
  for (int b = 0; b < m; ++b)
    if (b != a_i && val[b] > val[a_i]) return std::nullopt;
  CounterfactualBelief belief;
  belief.player = i;
  belief.rows.assign(m, std::vector<Rat>(env.num_profiles(), 0));
  for (int b = 0; b < m; ++b) belief.rows[b][pick[b]] = 1;
  return belief;
}

}  // namespace ice
