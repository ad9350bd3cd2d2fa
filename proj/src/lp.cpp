#include "ice/lp.hpp"

#include <stdexcept>

namespace ice {

void LinearSystem::add(std::vector<Rat> coef, Rel rel, Rat rhs) {
  if (static_cast<int>(coef.size()) != num_vars)
    throw std::invalid_argument("constraint length does not match variable count");
  rows.push_back(Constraint{std::move(coef), rel, std::move(rhs)});
}

bool verify_point(const LinearSystem& system, const std::vector<Rat>& point) {
  if (static_cast<int>(point.size()) != system.num_vars) return false;
  for (int j = 0; j < system.num_vars; ++j)
    if (system.nonneg[j] && point[j] < 0) return false;
  for (const Constraint& row : system.rows) {
    Rat lhs = 0;
    for (int j = 0; j < system.num_vars; ++j) lhs += row.coef[j] * point[j];
    if (row.rel == Rel::Le && lhs > row.rhs) return false;
    if (row.rel == Rel::Ge && lhs < row.rhs) return false;
    if (row.rel == Rel::Eq && lhs != row.rhs) return false;
  }
  return true;
}

bool verify_farkas(const LinearSystem& system, const std::vector<Rat>& multipliers) {
  if (multipliers.size() != system.rows.size()) return false;
  for (std::size_t k = 0; k < system.rows.size(); ++k)
    if (system.rows[k].rel != Rel::Eq && multipliers[k] < 0) return false;
  std::vector<Rat> g(system.num_vars, Rat(0));
  Rat h = 0;
  for (std::size_t k = 0; k < system.rows.size(); ++k) {
    const Constraint& row = system.rows[k];
    Rat m = row.rel == Rel::Le ? Rat(-multipliers[k]) : multipliers[k];
    if (m == 0) continue;
    for (int j = 0; j < system.num_vars; ++j) g[j] += m * row.coef[j];
    h += m * row.rhs;
  }
  if (h <= 0) return false;
  for (int j = 0; j < system.num_vars; ++j) {
    if (system.nonneg[j] ? g[j] > 0 : g[j] != 0) return false;
  }
  return true;
}

namespace {

// Dense tableau in equality form over: structural columns (free originals
// split into a +/- pair), one slack or surplus per inequality row, one
// artificial per row. Artificial columns never enter a basis but stay in the
// tableau: their reduced costs read off the row multipliers y = c_B B^-1
// that become Farkas or dual certificates.
struct Tableau {
  int m = 0;
  int cols = 0;
  std::vector<std::vector<Rat>> a;  // m x (cols+1), last entry rhs
  std::vector<Rat> z;               // cols+1 reduced-cost row, last = -objective
  std::vector<int> basis;
  std::vector<char> enterable;

  void pivot(int r, int e) {
    Rat inv = 1 / a[r][e];
    for (Rat& v : a[r]) v *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][e] == 0) continue;
      Rat f = a[i][e];
      for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    if (z[e] != 0) {
      Rat f = z[e];
      for (int j = 0; j <= cols; ++j) z[j] -= f * a[r][j];
    }
    basis[r] = e;
  }

  void price(const std::vector<Rat>& cost) {
    z.assign(cols + 1, Rat(0));
    for (int j = 0; j < cols; ++j) z[j] = cost[j];
    for (int r = 0; r < m; ++r) {
      const Rat& cb = cost[basis[r]];
      if (cb == 0) continue;
      for (int j = 0; j <= cols; ++j) z[j] -= cb * a[r][j];
    }
  }

  // Bland: lowest enterable column with negative reduced cost; lowest basic
  // variable among the minimum-ratio rows. Returns false at optimum, throws
  // never; sets *unbounded_col when no row bounds the entering column.
  bool step(int* unbounded_col) {
    int e = -1;
    for (int j = 0; j < cols; ++j)
      if (enterable[j] && z[j] < 0) {
        e = j;
        break;
      }
    if (e < 0) return false;
    int leave = -1;
    Rat best;
    for (int r = 0; r < m; ++r) {
      if (a[r][e] <= 0) continue;
      Rat ratio = a[r][cols] / a[r][e];
      if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) {
      *unbounded_col = e;
      return false;
    }
    pivot(leave, e);
    *unbounded_col = -1;
    return true;
  }
};

}  // namespace

LpResult solve(const LinearSystem& system, const std::vector<Rat>* objective, Sense sense) {
  const int n = system.num_vars;
  const int m = static_cast<int>(system.rows.size());
  if (objective && static_cast<int>(objective->size()) != n)
    throw std::invalid_argument("objective length does not match variable count");

  if (n == 0) {
    LpResult res;
    for (int k = 0; k < m; ++k) {
      const Constraint& row = system.rows[k];
      bool bad = (row.rel == Rel::Le && row.rhs < 0) || (row.rel == Rel::Ge && row.rhs > 0) ||
                 (row.rel == Rel::Eq && row.rhs != 0);
      if (bad) {
        res.status = LpStatus::Infeasible;
        res.farkas.assign(m, Rat(0));
        res.farkas[k] = row.rel == Rel::Eq && row.rhs < 0 ? Rat(-1) : Rat(1);
        return res;
      }
    }
    res.status = objective ? LpStatus::Optimal : LpStatus::Feasible;
    res.value = 0;
    return res;
  }

  // Column layout: structural (split pairs for free variables), slacks,
  // artificials; the order fixes Bland's variable numbering.
  std::vector<int> col_of(n);       // first structural column of each variable
  int structural = 0;
  for (int j = 0; j < n; ++j) {
    col_of[j] = structural;
    structural += system.nonneg[j] ? 1 : 2;
  }
  std::vector<int> slack_col(m, -1), art_col(m);
  std::vector<Rat> flip(m, Rat(1));
  std::vector<Rel> irel(m);
  int cols = structural;
  for (int r = 0; r < m; ++r) {
    irel[r] = system.rows[r].rel;
    if (system.rows[r].rhs < 0) {
      flip[r] = -1;
      if (irel[r] == Rel::Le) irel[r] = Rel::Ge;
      else if (irel[r] == Rel::Ge) irel[r] = Rel::Le;
    }
    if (irel[r] != Rel::Eq) slack_col[r] = cols++;
  }
  for (int r = 0; r < m; ++r) art_col[r] = cols++;

  Tableau tab;
  tab.m = m;
  tab.cols = cols;
  tab.a.assign(m, std::vector<Rat>(cols + 1, Rat(0)));
  tab.basis.assign(m, 0);
  tab.enterable.assign(cols, 1);
  for (int r = 0; r < m; ++r) tab.enterable[art_col[r]] = 0;

  for (int r = 0; r < m; ++r) {
    const Constraint& row = system.rows[r];
    for (int j = 0; j < n; ++j) {
      Rat v = flip[r] * row.coef[j];
      if (v == 0) continue;
      tab.a[r][col_of[j]] = v;
      if (!system.nonneg[j]) tab.a[r][col_of[j] + 1] = -v;
    }
    tab.a[r][cols] = flip[r] * row.rhs;
    if (irel[r] == Rel::Le) tab.a[r][slack_col[r]] = 1;
    if (irel[r] == Rel::Ge) tab.a[r][slack_col[r]] = -1;
    tab.a[r][art_col[r]] = 1;
    tab.basis[r] = irel[r] == Rel::Le ? slack_col[r] : art_col[r];
  }

  // Phase 1: minimize the artificial total.
  std::vector<Rat> cost1(cols, Rat(0));
  for (int r = 0; r < m; ++r) cost1[art_col[r]] = 1;
  tab.price(cost1);
  int unbounded = -1;
  while (tab.step(&unbounded)) {}

  LpResult res;
  if (-tab.z[cols] > 0) {
    res.status = LpStatus::Infeasible;
    res.farkas.assign(m, Rat(0));
    for (int r = 0; r < m; ++r) {
      Rat y = 1 - tab.z[art_col[r]];
      // Same orientation bookkeeping as verify_farkas: >= rows contribute
      // +m, <= rows -m, equalities signed freely.
      if (system.rows[r].rel == Rel::Le) res.farkas[r] = -y * flip[r];
      else res.farkas[r] = y * flip[r];
    }
    return res;
  }

  // Drive leftover artificials out of the basis; an all-zero row is a
  // redundant combination and its artificial stays basic at level zero,
  // where no later pivot can touch it.
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < art_col[0]) continue;
    for (int j = 0; j < art_col[0]; ++j) {
      if (tab.a[r][j] != 0) {
        tab.pivot(r, j);
        break;
      }
    }
  }

  auto extract_point = [&]() {
    std::vector<Rat> point(n, Rat(0));
    std::vector<Rat> colval(cols, Rat(0));
    for (int r = 0; r < m; ++r) colval[tab.basis[r]] = tab.a[r][cols];
    for (int j = 0; j < n; ++j) {
      point[j] = colval[col_of[j]];
      if (!system.nonneg[j]) point[j] -= colval[col_of[j] + 1];
    }
    return point;
  };

  if (!objective) {
    res.status = LpStatus::Feasible;
    res.point = extract_point();
    return res;
  }

  // Phase 2 minimizes the internal cost; Max flips the sign once here and
  // once when reporting the value.
  std::vector<Rat> cost2(cols, Rat(0));
  for (int j = 0; j < n; ++j) {
    Rat c = sense == Sense::Max ? Rat(-(*objective)[j]) : (*objective)[j];
    cost2[col_of[j]] = c;
    if (!system.nonneg[j]) cost2[col_of[j] + 1] = -c;
  }
  tab.price(cost2);
  unbounded = -1;
  while (tab.step(&unbounded)) {}

  if (unbounded >= 0) {
    res.status = LpStatus::Unbounded;
    std::vector<Rat> dir(cols, Rat(0));
    dir[unbounded] = 1;
    for (int r = 0; r < m; ++r) dir[tab.basis[r]] = -tab.a[r][unbounded];
    res.ray.assign(n, Rat(0));
    for (int j = 0; j < n; ++j) {
      res.ray[j] = dir[col_of[j]];
      if (!system.nonneg[j]) res.ray[j] -= dir[col_of[j] + 1];
    }
    return res;
  }

  res.status = LpStatus::Optimal;
  res.point = extract_point();
  res.value = 0;
  for (int j = 0; j < n; ++j) res.value += (*objective)[j] * res.point[j];
  res.dual.assign(m, Rat(0));
  for (int r = 0; r < m; ++r) {
    Rat y = -tab.z[art_col[r]];
    if (system.rows[r].rel == Rel::Le) res.dual[r] = -y * flip[r];
    else res.dual[r] = y * flip[r];
  }
  return res;
}

}  // namespace ice
