#include "ice/equilibrium.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ice {

namespace {

// Smallest payoff for player i when the players in `movers` jointly pick from
// their bstar components and everyone else stands at `profile`. No movers
// means the payoff at `profile` itself.
Rat min_over(const Environment& env, int i, Profile profile, const std::vector<int>& movers,
             const ActionSubspace& bstar) {
  for (int j : movers)
    if (bstar.parts[j].empty())
      throw std::invalid_argument("vacuous punishment: empty threat component for " +
                                  env.player_name(j));
  std::vector<std::size_t> idx(movers.size(), 0);
  Rat best;
  bool have = false;
  for (;;) {
    for (std::size_t k = 0; k < movers.size(); ++k)
      profile[movers[k]] = bstar.parts[movers[k]][idx[k]];
    Rat u = env.payoff(i, profile);
    if (!have || u < best) {
      best = u;
      have = true;
    }
    std::size_t k = 0;
    while (k < movers.size()) {
      if (++idx[k] < bstar.parts[movers[k]].size()) break;
      idx[k] = 0;
      ++k;
    }
    if (k == movers.size()) break;
  }
  return best;
}

void require_two_players(const Environment& env, const char* what) {
  if (env.num_players() != 2)
    throw std::invalid_argument(std::string(what) + " punishment needs exactly two players");
}

std::string gamma_name(const Environment& env, int flat, const std::vector<int>& ordering) {
  Profile a = env.profile(flat);
  std::string s = "g(";
  for (int i = 0; i < env.num_players(); ++i) {
    if (i > 0) s += ",";
    s += env.action_label(i, a[i]);
  }
  s += "|";
  for (std::size_t k = 0; k < ordering.size(); ++k) {
    if (k > 0) s += ">";
    s += env.player_name(ordering[k]);
  }
  return s + ")";
}

// Saturating profiles * n! so the cap check never overflows or allocates.
long ordering_cells(long profiles, int n, long cap) {
  long f = 1;
  for (int k = 2; k <= n; ++k) {
    if (f > cap / k) return cap + 1;
    f *= k;
  }
  if (profiles > 0 && f > cap / profiles) return cap + 1;
  return f * profiles;
}

void check_cap(const Environment& env, long cap) {
  long cells = ordering_cells(env.num_profiles(), env.num_players(), cap);
  if (cells > cap)
    throw std::length_error("instance too large: over " + std::to_string(cap) +
                            " profile-ordering cells (ICE_LAB_SIZE_CAP raises the limit)");
}

void check_mode_arity(const Environment& env, PunishmentMode mode) {
  if (mode != PunishmentMode::WorstInThreats && env.num_players() != 2)
    require_two_players(env, mode == PunishmentMode::Minimax ? "minimax" : "best-response");
}

// Playing the recommendation is compliance, not a deviation, so the
// alternative floors never apply on the diagonal; those rows keep the
// baseline min, under which they hold automatically on the support.
PunishmentMode row_mode(int rec, int dev, PunishmentMode mode) {
  return dev == rec ? PunishmentMode::WorstInThreats : mode;
}

}  // namespace

std::vector<std::vector<int>> all_orderings(int n) {
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) base[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

long default_size_cap() {
  if (const char* s = std::getenv("ICE_LAB_SIZE_CAP")) {
    long v = std::atol(s);
    if (v > 0) return v;
  }
  return 100000;
}

Rat worst_punishment(const Environment& env, int i, int dev, const ActionSubspace& bstar,
                     PunishmentMode mode, int rec) {
  const int n = env.num_players();
  switch (mode) {
    case PunishmentMode::WorstInThreats: {
      Profile p(n, 0);
      p[i] = dev;
      std::vector<int> movers;
      for (int j = 0; j < n; ++j)
        if (j != i) movers.push_back(j);
      return min_over(env, i, p, movers, bstar);
    }
    case PunishmentMode::BestResponseOnly: {
      require_two_players(env, "best-response");
      const int o = 1 - i;
      // The deviation is public, so the opponent best-responds over the full
      // action set; the floor is the worst payoff among those responses.
      Rat top;
      std::vector<int> br;
      for (int c = 0; c < env.num_actions(o); ++c) {
        Profile p(2);
        p[i] = dev;
        p[o] = c;
        Rat u = env.payoff(o, p);
        if (br.empty() || u > top) {
          top = u;
          br = {c};
        } else if (u == top) {
          br.push_back(c);
        }
      }
      Rat worst;
      bool have = false;
      for (int c : br) {
        Profile p(2);
        p[i] = dev;
        p[o] = c;
        Rat u = env.payoff(i, p);
        if (!have || u < worst) {
          worst = u;
          have = true;
        }
      }
      return worst;
    }
    case PunishmentMode::Minimax: {
      require_two_players(env, "minimax");
      if (rec < 0 || rec >= env.num_actions(i))
        throw std::invalid_argument("minimax floor needs the recommendation it punishes from");
      const int o = 1 - i;
      const auto& comp = bstar.parts[o];
      if (comp.empty())
        throw std::invalid_argument("vacuous punishment: empty threat component for " +
                                    env.player_name(o));
      if (env.num_actions(i) < 2)
        throw std::invalid_argument("minimax floor undefined without a deviation");
      // The punishment plan is drawn before the deviation is seen, so it can
      // condition on the recommendation only; the deviator then picks his
      // best remaining action. Value of that zero-sum game: variables
      // sigma(b) >= 0 over the threat component plus the value v, minimize v
      // against one row per deviation. With two actions the single row makes
      // this the plain worst punishment of the other action.
      LinearSystem sys;
      for (int b : comp) sys.add_var("s(" + env.action_label(o, b) + ")");
      sys.add_var("v", false);
      const int m = static_cast<int>(comp.size());
      std::vector<Rat> one(m + 1, Rat(0));
      for (int k = 0; k < m; ++k) one[k] = 1;
      sys.add(one, Rel::Eq, Rat(1));
      for (int d = 0; d < env.num_actions(i); ++d) {
        if (d == rec) continue;
        std::vector<Rat> row(m + 1, Rat(0));
        for (int k = 0; k < m; ++k) {
          Profile p(2);
          p[i] = d;
          p[o] = comp[k];
          row[k] = -env.payoff(i, p);
        }
        row[m] = 1;
        sys.add(row, Rel::Ge, Rat(0));
      }
      std::vector<Rat> obj(m + 1, Rat(0));
      obj[m] = 1;
      LpResult res = solve(sys, &obj, Sense::Min);
      if (res.status != LpStatus::Optimal)
        throw std::logic_error("minimax program failed to solve");
      return res.value;
    }
  }
  throw std::logic_error("unreachable punishment mode");
}

Rat dev_floor(const Environment& env, int i, int dev, int flat, const std::vector<int>& ordering,
              const ActionSubspace& bstar, PunishmentMode mode) {
  Profile p = env.profile(flat);
  const int rec = p[i];
  p[i] = dev;
  auto pos = std::find(ordering.begin(), ordering.end(), i);
  std::vector<int> post(pos + 1, ordering.end());
  if (post.empty()) return env.payoff(i, p);
  if (mode != PunishmentMode::WorstInThreats) {
    require_two_players(env, mode == PunishmentMode::Minimax ? "minimax" : "best-response");
    return worst_punishment(env, i, dev, bstar, mode, rec);
  }
  return min_over(env, i, p, post, bstar);
}

OrderingDistribution uniform_orderings(const Environment& env) {
  long o = 1;
  for (int k = 2; k <= env.num_players(); ++k) o *= k;
  OrderingDistribution theta;
  theta.rows.assign(env.num_profiles(), std::vector<Rat>(o, Rat(1) / Rat(o)));
  return theta;
}

OrderingDistribution theta_first_mover(const Environment& env, std::vector<Rat> p0_first) {
  if (env.num_players() != 2)
    throw std::invalid_argument("first-mover shorthand needs exactly two players");
  if (static_cast<int>(p0_first.size()) != env.num_profiles())
    throw std::invalid_argument("one first-mover probability per profile expected");
  OrderingDistribution theta;
  theta.rows.resize(env.num_profiles());
  for (int a = 0; a < env.num_profiles(); ++a) {
    if (p0_first[a] < 0 || p0_first[a] > 1)
      throw std::invalid_argument("first-mover probability outside [0,1]");
    theta.rows[a] = {p0_first[a], Rat(1) - p0_first[a]};
  }
  return theta;
}

bool valid_theta(const Environment& env, const JointDistribution& alpha,
                 const OrderingDistribution& theta) {
  if (static_cast<int>(theta.rows.size()) != env.num_profiles()) return false;
  long o = 1;
  for (int k = 2; k <= env.num_players(); ++k) o *= k;
  for (int a = 0; a < env.num_profiles(); ++a) {
    if (alpha[a] == 0) continue;
    const auto& row = theta.rows[a];
    if (static_cast<long>(row.size()) != o) return false;
    Rat total = 0;
    for (const Rat& t : row) {
      if (t < 0) return false;
      total += t;
    }
    if (total != 1) return false;
  }
  return true;
}

Rat GammaVariable::profile_mass(int flat) const {
  Rat total = 0;
  for (int o = 0; o < num_orderings; ++o) total += at(flat, o);
  return total;
}

GammaVariable make_gamma(const Environment& env, const JointDistribution& alpha,
                         const OrderingDistribution& theta) {
  if (!valid_theta(env, alpha, theta))
    throw std::invalid_argument("ordering distribution invalid on the support");
  long o = 1;
  for (int k = 2; k <= env.num_players(); ++k) o *= k;
  GammaVariable g;
  g.num_orderings = static_cast<int>(o);
  g.w.assign(static_cast<std::size_t>(env.num_profiles()) * o, Rat(0));
  for (int a = 0; a < env.num_profiles(); ++a) {
    if (alpha[a] == 0) continue;
    for (long k = 0; k < o; ++k) g.w[a * o + k] = alpha[a] * theta.rows[a][k];
  }
  return g;
}

OrderingDistribution theta_from_gamma(const Environment& env, const JointDistribution& alpha,
                                      const GammaVariable& gamma) {
  OrderingDistribution theta;
  theta.rows.resize(env.num_profiles());
  for (int a = 0; a < env.num_profiles(); ++a) {
    if (alpha[a] == 0) continue;
    theta.rows[a].resize(gamma.num_orderings);
    for (int o = 0; o < gamma.num_orderings; ++o) theta.rows[a][o] = gamma.at(a, o) / alpha[a];
  }
  return theta;
}

bool incentive_compatible(const Environment& env, const JointDistribution& alpha,
                          const OrderingDistribution& theta, const ThreatSpace& threats,
                          PunishmentMode mode) {
  if (!valid_theta(env, alpha, theta))
    throw std::invalid_argument("ordering distribution invalid on the support");
  const ActionSubspace bstar = effective_threats(env, threats, alpha);
  const auto orderings = all_orderings(env.num_players());
  for (int i = 0; i < env.num_players(); ++i) {
    for (int ai = 0; ai < env.num_actions(i); ++ai) {
      for (int dev = 0; dev < env.num_actions(i); ++dev) {
        Rat total = 0;
        for (int a = 0; a < env.num_profiles(); ++a) {
          if (alpha[a] == 0 || env.profile(a)[i] != ai) continue;
          for (std::size_t o = 0; o < orderings.size(); ++o) {
            Rat w = alpha[a] * theta.rows[a][o];
            if (w == 0) continue;
            total += w * (env.payoff(i, a) -
                          dev_floor(env, i, dev, a, orderings[o], bstar, row_mode(ai, dev, mode)));
          }
        }
        if (total < 0) return false;
      }
    }
  }
  return true;
}

namespace {

// Shared scaffolding for the gamma systems: mass row, then either marginal
// equalities (alpha fixed) or zero rows off the support product, then the
// incentive block in lexicographic (player, recommendation, deviation) order.
void add_mass_and_profile_rows(const Environment& env, int num_orderings, LinearSystem& sys,
                               const JointDistribution* alpha, const ActionSubspace* support) {
  const int P = env.num_profiles();
  std::vector<Rat> mass(static_cast<std::size_t>(P) * num_orderings, Rat(1));
  sys.add(mass, Rel::Eq, Rat(1));
  for (int a = 0; a < P; ++a) {
    bool pinned = alpha != nullptr;
    bool zeroed = false;
    if (support != nullptr) {
      Profile p = env.profile(a);
      for (int j = 0; j < env.num_players() && !zeroed; ++j)
        if (!subspace_has(*support, j, p[j])) zeroed = true;
    }
    if (!pinned && !zeroed) continue;
    std::vector<Rat> row(static_cast<std::size_t>(P) * num_orderings, Rat(0));
    for (int o = 0; o < num_orderings; ++o) row[a * num_orderings + o] = 1;
    sys.add(std::move(row), Rel::Eq, pinned ? (*alpha)[a] : Rat(0));
  }
}

void check_exactly_one(const JointDistribution* alpha, const ActionSubspace* support) {
  if ((alpha == nullptr) == (support == nullptr))
    throw std::invalid_argument("exactly one of alpha and support must be given");
}

}  // namespace

LinearSystem build_ice_system(const Environment& env, const JointDistribution* alpha,
                              const ThreatSpace& threats, PunishmentMode mode,
                              const ActionSubspace* support) {
  check_exactly_one(alpha, support);
  if (env.num_players() != 2) return n_player_system(env, alpha, threats, mode, support);
  check_cap(env, default_size_cap());
  const ActionSubspace bstar = alpha ? effective_threats(env, threats, *alpha)
                                     : effective_threats(env, threats, *support);
  const int P = env.num_profiles();
  LinearSystem sys;
  const auto orderings = all_orderings(2);
  for (int a = 0; a < P; ++a)
    for (const auto& ord : orderings) sys.add_var(gamma_name(env, a, ord));
  add_mass_and_profile_rows(env, 2, sys, alpha, support);
  for (int i = 0; i < 2; ++i) {
    const int o = 1 - i;
    const int first_ord = i == 0 ? 0 : 1;  // ordering index where i moves first
    for (int ai = 0; ai < env.num_actions(i); ++ai) {
      for (int dev = 0; dev < env.num_actions(i); ++dev) {
        Rat wfloor = worst_punishment(env, i, dev, bstar, row_mode(ai, dev, mode), ai);
        std::vector<Rat> row(static_cast<std::size_t>(P) * 2, Rat(0));
        for (int c = 0; c < env.num_actions(o); ++c) {
          Profile p(2);
          p[i] = ai;
          p[o] = c;
          const int a = env.flat_index(p);
          const Rat& u = env.payoff(i, a);
          row[a * 2 + first_ord] = u - wfloor;
          row[a * 2 + (1 - first_ord)] = u - env.payoff(i, env.replace(a, i, dev));
        }
        sys.add(std::move(row), Rel::Ge, Rat(0));
      }
    }
  }
  return sys;
}

LinearSystem n_player_system(const Environment& env, const JointDistribution* alpha,
                             const ThreatSpace& threats, PunishmentMode mode,
                             const ActionSubspace* support, long size_cap) {
  check_exactly_one(alpha, support);
  check_cap(env, size_cap);
  check_mode_arity(env, mode);
  const ActionSubspace bstar = alpha ? effective_threats(env, threats, *alpha)
                                     : effective_threats(env, threats, *support);
  const int P = env.num_profiles();
  const auto orderings = all_orderings(env.num_players());
  const int O = static_cast<int>(orderings.size());
  LinearSystem sys;
  for (int a = 0; a < P; ++a)
    for (const auto& ord : orderings) sys.add_var(gamma_name(env, a, ord));
  add_mass_and_profile_rows(env, O, sys, alpha, support);
  for (int i = 0; i < env.num_players(); ++i) {
    for (int ai = 0; ai < env.num_actions(i); ++ai) {
      for (int dev = 0; dev < env.num_actions(i); ++dev) {
        std::vector<Rat> row(static_cast<std::size_t>(P) * O, Rat(0));
        for (int a = 0; a < P; ++a) {
          if (env.profile(a)[i] != ai) continue;
          const Rat& u = env.payoff(i, a);
          for (int o = 0; o < O; ++o)
            row[a * O + o] =
                u - dev_floor(env, i, dev, a, orderings[o], bstar, row_mode(ai, dev, mode));
        }
        sys.add(std::move(row), Rel::Ge, Rat(0));
      }
    }
  }
  return sys;
}

IceCertificate is_ice(const Environment& env, const JointDistribution& alpha,
                      const ThreatSpace& threats, PunishmentMode mode) {
  IceCertificate cert;
  cert.system = build_ice_system(env, &alpha, threats, mode);
  LpResult res = solve(cert.system);
  if (res.status == LpStatus::Feasible) {
    cert.verdict = true;
    cert.gamma.num_orderings = cert.system.num_vars / env.num_profiles();
    cert.gamma.w = std::move(res.point);
    cert.theta = theta_from_gamma(env, alpha, cert.gamma);
  } else {
    cert.verdict = false;
    cert.farkas = std::move(res.farkas);
  }
  return cert;
}

bool is_correlated_eq(const Environment& env, const JointDistribution& alpha) {
  for (int i = 0; i < env.num_players(); ++i) {
    for (int ai = 0; ai < env.num_actions(i); ++ai) {
      for (int dev = 0; dev < env.num_actions(i); ++dev) {
        Rat total = 0;
        for (int a = 0; a < env.num_profiles(); ++a) {
          if (alpha[a] == 0 || env.profile(a)[i] != ai) continue;
          total += alpha[a] * (env.payoff(i, a) - env.payoff(i, env.replace(a, i, dev)));
        }
        if (total < 0) return false;
      }
    }
  }
  return true;
}

bool is_individually_rational(const Environment& env, const JointDistribution& alpha,
                              const ThreatSpace& threats, PunishmentMode mode) {
  const ActionSubspace bstar = effective_threats(env, threats, alpha);
  for (int i = 0; i < env.num_players(); ++i) {
    std::vector<Rat> margin = marginal(env, alpha, i);
    for (int ai = 0; ai < env.num_actions(i); ++ai) {
      if (margin[ai] == 0) continue;
      Rat onpath = 0;
      for (int a = 0; a < env.num_profiles(); ++a)
        if (env.profile(a)[i] == ai) onpath += alpha[a] * env.payoff(i, a);
      for (int dev = 0; dev < env.num_actions(i); ++dev)
        if (onpath <
            margin[ai] * worst_punishment(env, i, dev, bstar, row_mode(ai, dev, mode), ai))
          return false;
    }
  }
  return true;
}

LinearSystem build_support_slice(const Environment& env, const ThreatSpace& threats,
                                 const ActionSubspace& support,
                                 const std::vector<AlphaConstraint>& extra, bool unit_mass,
                                 PunishmentMode mode, long size_cap) {
  for (int i = 0; i < env.num_players(); ++i)
    if (support.parts[i].empty())
      throw std::invalid_argument("support component empty for " + env.player_name(i));
  check_cap(env, size_cap);
  check_mode_arity(env, mode);
  const ActionSubspace bstar = effective_threats(env, threats, support);
  const int P = env.num_profiles();
  const auto orderings = all_orderings(env.num_players());
  const int O = static_cast<int>(orderings.size());
  const std::size_t cells = static_cast<std::size_t>(P) * O;
  LinearSystem sys;
  for (int a = 0; a < P; ++a)
    for (const auto& ord : orderings) sys.add_var(gamma_name(env, a, ord));
  sys.add_var("t");

  std::vector<Rat> mass(cells + 1, Rat(1));
  mass[cells] = 0;
  sys.add(std::move(mass), unit_mass ? Rel::Eq : Rel::Le, Rat(1));
  for (int a = 0; a < P; ++a) {
    Profile p = env.profile(a);
    bool inside = true;
    for (int j = 0; j < env.num_players() && inside; ++j)
      if (!subspace_has(support, j, p[j])) inside = false;
    if (inside) continue;
    std::vector<Rat> row(cells + 1, Rat(0));
    for (int o = 0; o < O; ++o) row[a * O + o] = 1;
    sys.add(std::move(row), Rel::Eq, Rat(0));
  }
  for (int i = 0; i < env.num_players(); ++i) {
    for (int ai = 0; ai < env.num_actions(i); ++ai) {
      for (int dev = 0; dev < env.num_actions(i); ++dev) {
        std::vector<Rat> row(cells + 1, Rat(0));
        for (int a = 0; a < P; ++a) {
          if (env.profile(a)[i] != ai) continue;
          const Rat& u = env.payoff(i, a);
          for (int o = 0; o < O; ++o)
            row[a * O + o] =
                u - dev_floor(env, i, dev, a, orderings[o], bstar, row_mode(ai, dev, mode));
        }
        sys.add(std::move(row), Rel::Ge, Rat(0));
      }
    }
  }
  // every in-support marginal at least t, so t > 0 certifies exact support
  for (int i = 0; i < env.num_players(); ++i) {
    for (int s : support.parts[i]) {
      std::vector<Rat> row(cells + 1, Rat(0));
      for (int a = 0; a < P; ++a) {
        if (env.profile(a)[i] != s) continue;
        for (int o = 0; o < O; ++o) row[a * O + o] = 1;
      }
      row[cells] = -1;
      sys.add(std::move(row), Rel::Ge, Rat(0));
    }
  }
  for (const AlphaConstraint& con : extra) {
    if (static_cast<int>(con.coef.size()) != P)
      throw std::invalid_argument("alpha constraint needs one coefficient per profile");
    std::vector<Rat> row(cells + 1, Rat(0));
    for (int a = 0; a < P; ++a)
      for (int o = 0; o < O; ++o) row[a * O + o] = con.coef[a];
    sys.add(std::move(row), con.rel, con.rhs);
  }
  return sys;
}

LpResult is_ice_variable(const Environment& env, const ThreatSpace& threats,
                         const ActionSubspace& support, const std::vector<AlphaConstraint>& extra,
                         const std::vector<Rat>* alpha_objective, PunishmentMode mode) {
  const bool unit_mass = alpha_objective != nullptr;
  LinearSystem sys = build_support_slice(env, threats, support, extra, unit_mass, mode);
  std::vector<Rat> obj(sys.num_vars, Rat(0));
  if (alpha_objective) {
    if (static_cast<int>(alpha_objective->size()) != env.num_profiles())
      throw std::invalid_argument("objective needs one coefficient per profile");
    const int O = (sys.num_vars - 1) / env.num_profiles();
    for (int a = 0; a < env.num_profiles(); ++a)
      for (int o = 0; o < O; ++o) obj[a * O + o] = (*alpha_objective)[a];
  } else {
    obj.back() = 1;
  }
  return solve(sys, &obj, Sense::Max);
}

}  // namespace ice
