#include "doctest.h"
#include "ice/lp.hpp"
#include "ice/rng.hpp"

#include <string>
#include <vector>

using namespace ice;

namespace {

LinearSystem sys_of(int vars, std::vector<char> nonneg = {}) {
  LinearSystem s;
  for (int j = 0; j < vars; ++j)
    s.add_var("x" + std::to_string(j), nonneg.empty() ? true : nonneg[j] != 0);
  return s;
}

// Optimality certificate: point feasibility, dual multiplier signs,
// complementary slackness, and the value identity. Rows are oriented so >=
// and = contribute +coef and <= contributes -coef; the combined row (g, h)
// must bound the internally minimized objective c (negated for Max):
// g_j <= c_j on nonnegative variables (equal where the point is positive),
// g_j == c_j on free ones, and h equals the optimal internal value.
void check_optimal(const LinearSystem& sys, const std::vector<Rat>& obj, Sense sense,
                   const LpResult& res) {
  REQUIRE(res.status == LpStatus::Optimal);
  REQUIRE(verify_point(sys, res.point));
  Rat v = 0;
  for (int j = 0; j < sys.num_vars; ++j) v += obj[j] * res.point[j];
  CHECK(v == res.value);

  REQUIRE(res.dual.size() == sys.rows.size());
  std::vector<Rat> cint(sys.num_vars);
  for (int j = 0; j < sys.num_vars; ++j) cint[j] = sense == Sense::Max ? Rat(-obj[j]) : obj[j];
  std::vector<Rat> g(sys.num_vars, Rat(0));
  Rat h = 0;
  for (std::size_t k = 0; k < sys.rows.size(); ++k) {
    const Constraint& row = sys.rows[k];
    const Rat& m = res.dual[k];
    if (row.rel != Rel::Eq) CHECK(m >= 0);
    Rat s = row.rel == Rel::Le ? Rat(-1) : Rat(1);
    for (int j = 0; j < sys.num_vars; ++j) g[j] += s * m * row.coef[j];
    h += s * m * row.rhs;
    if (m != 0) {
      Rat lhs = 0;
      for (int j = 0; j < sys.num_vars; ++j) lhs += row.coef[j] * res.point[j];
      CHECK(lhs == row.rhs);
    }
  }
  for (int j = 0; j < sys.num_vars; ++j) {
    if (sys.nonneg[j]) {
      CHECK(g[j] <= cint[j]);
      if (res.point[j] > 0) CHECK(g[j] == cint[j]);
    } else {
      CHECK(g[j] == cint[j]);
    }
  }
  CHECK(h == (sense == Sense::Max ? Rat(-res.value) : res.value));
}

void check_unbounded(const LinearSystem& sys, const std::vector<Rat>& obj, Sense sense,
                     const LpResult& res) {
  REQUIRE(res.status == LpStatus::Unbounded);
  REQUIRE(static_cast<int>(res.ray.size()) == sys.num_vars);
  bool nonzero = false;
  Rat gain = 0;
  for (int j = 0; j < sys.num_vars; ++j) {
    if (res.ray[j] != 0) nonzero = true;
    if (sys.nonneg[j]) CHECK(res.ray[j] >= 0);
    gain += obj[j] * res.ray[j];
  }
  CHECK(nonzero);
  if (sense == Sense::Max) CHECK(gain > 0);
  else CHECK(gain < 0);
  for (const Constraint& row : sys.rows) {
    Rat d = 0;
    for (int j = 0; j < sys.num_vars; ++j) d += row.coef[j] * res.ray[j];
    if (row.rel == Rel::Le) CHECK(d <= 0);
    if (row.rel == Rel::Ge) CHECK(d >= 0);
    if (row.rel == Rel::Eq) CHECK(d == 0);
  }
}

}  // namespace

TEST_CASE("bounded one-variable maximum") {
  LinearSystem s = sys_of(1);
  s.add({rat(1)}, Rel::Le, rat(1));
  std::vector<Rat> obj = {rat(1)};
  LpResult res = solve(s, &obj);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == 1);
  CHECK(res.point == std::vector<Rat>{rat(1)});
  check_optimal(s, obj, Sense::Max, res);
}

TEST_CASE("one-variable contradiction yields the unit Farkas pair") {
  LinearSystem s = sys_of(1);
  s.add({rat(1)}, Rel::Ge, rat(1));
  s.add({rat(1)}, Rel::Le, rat(0));
  LpResult res = solve(s);
  REQUIRE(res.status == LpStatus::Infeasible);
  CHECK(res.farkas == std::vector<Rat>{rat(1), rat(1)});
  CHECK(verify_farkas(s, res.farkas));
}

TEST_CASE("binding joint constraint") {
  LinearSystem s = sys_of(2);
  s.add({rat(1), rat(1)}, Rel::Le, rat(7, 3));
  std::vector<Rat> obj = {rat(1), rat(1)};
  LpResult res = solve(s, &obj);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == rat(7, 3));
  check_optimal(s, obj, Sense::Max, res);
}

TEST_CASE("verification primitives") {
  LinearSystem s = sys_of(1);
  s.add({rat(1)}, Rel::Le, rat(1));
  CHECK(verify_point(s, {rat(1)}));
  CHECK(!verify_point(s, {rat(2)}));
  CHECK(!verify_point(s, {rat(-1)}));  // violates the nonnegativity flag

  LinearSystem t = sys_of(1);
  t.add({rat(1)}, Rel::Ge, rat(1));
  t.add({rat(-1)}, Rel::Ge, rat(0));
  CHECK(verify_farkas(t, {rat(1), rat(1)}));
  CHECK(!verify_farkas(t, {rat(1), rat(0)}));
}

TEST_CASE("equalities and free variables") {
  LinearSystem s = sys_of(2, {0, 0});
  s.add({rat(1), rat(1)}, Rel::Eq, rat(2));
  s.add({rat(1), rat(-1)}, Rel::Eq, rat(0));
  LpResult res = solve(s);
  REQUIRE(res.status == LpStatus::Feasible);
  CHECK(res.point == std::vector<Rat>{rat(1), rat(1)});

  LinearSystem m = sys_of(2, {0, 1});
  m.add({rat(1), rat(1)}, Rel::Eq, rat(2));
  std::vector<Rat> obj = {rat(1), rat(0)};
  LpResult r2 = solve(m, &obj);
  REQUIRE(r2.status == LpStatus::Optimal);
  CHECK(r2.value == 2);
  check_optimal(m, obj, Sense::Max, r2);

  LpResult r3 = solve(m, &obj, Sense::Min);
  check_unbounded(m, obj, Sense::Min, r3);
}

TEST_CASE("minimization sense") {
  LinearSystem s = sys_of(1);
  s.add({rat(1)}, Rel::Ge, rat(5));
  std::vector<Rat> obj = {rat(1)};
  LpResult res = solve(s, &obj, Sense::Min);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == 5);
  check_optimal(s, obj, Sense::Min, res);
}

TEST_CASE("unconstrained objective is unbounded") {
  LinearSystem s = sys_of(2);
  std::vector<Rat> obj = {rat(1), rat(1)};
  LpResult res = solve(s, &obj);
  check_unbounded(s, obj, Sense::Max, res);
}

TEST_CASE("negative rhs flipping keeps certificates aligned") {
  LinearSystem s = sys_of(2);
  s.add({rat(-1), rat(-1)}, Rel::Ge, rat(-3));  // x + y <= 3
  s.add({rat(1), rat(-1)}, Rel::Le, rat(-1));   // y >= x + 1
  std::vector<Rat> obj = {rat(2), rat(1)};
  LpResult res = solve(s, &obj);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == 4);  // x = 1, y = 2
  check_optimal(s, obj, Sense::Max, res);

  LinearSystem t = sys_of(1);
  t.add({rat(-1)}, Rel::Ge, rat(-1));  // x <= 1
  t.add({rat(1)}, Rel::Ge, rat(2));
  LpResult r2 = solve(t);
  REQUIRE(r2.status == LpStatus::Infeasible);
  CHECK(verify_farkas(t, r2.farkas));
}

TEST_CASE("degenerate systems terminate under Bland's rule") {
  // All-zero rhs with redundant rows.
  LinearSystem s = sys_of(3);
  s.add({rat(1), rat(-1), rat(0)}, Rel::Le, rat(0));
  s.add({rat(1), rat(-1), rat(0)}, Rel::Ge, rat(0));
  s.add({rat(2), rat(-2), rat(0)}, Rel::Eq, rat(0));
  s.add({rat(1), rat(1), rat(1)}, Rel::Le, rat(0));
  std::vector<Rat> obj = {rat(1), rat(1), rat(1)};
  LpResult res = solve(s, &obj);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == 0);
  check_optimal(s, obj, Sense::Max, res);

  // Beale's cycling instance; Bland's rule must reach the optimum -1/20.
  LinearSystem b = sys_of(4);
  b.add({rat(1, 4), rat(-60), rat(-1, 25), rat(9)}, Rel::Le, rat(0));
  b.add({rat(1, 2), rat(-90), rat(-1, 50), rat(3)}, Rel::Le, rat(0));
  b.add({rat(0), rat(0), rat(1), rat(0)}, Rel::Le, rat(1));
  std::vector<Rat> beale = {rat(-3, 4), rat(150), rat(-1, 50), rat(6)};
  LpResult rb = solve(b, &beale, Sense::Min);
  REQUIRE(rb.status == LpStatus::Optimal);
  CHECK(rb.value == rat(-1, 20));
  check_optimal(b, beale, Sense::Min, rb);
}

TEST_CASE("solver is deterministic") {
  LinearSystem s = sys_of(3);
  s.add({rat(1), rat(2), rat(1)}, Rel::Le, rat(4));
  s.add({rat(2), rat(1), rat(0)}, Rel::Le, rat(3));
  s.add({rat(0), rat(1), rat(3)}, Rel::Ge, rat(1));
  std::vector<Rat> obj = {rat(3), rat(1), rat(2)};
  LpResult a = solve(s, &obj);
  LpResult b = solve(s, &obj);
  REQUIRE(a.status == b.status);
  CHECK(a.point == b.point);
  CHECK(a.value == b.value);
  CHECK(a.dual == b.dual);
}

TEST_CASE("dimension mismatches are rejected") {
  LinearSystem s = sys_of(2);
  CHECK_THROWS_AS(s.add({rat(1)}, Rel::Le, rat(1)), std::invalid_argument);
  s.add({rat(1), rat(1)}, Rel::Le, rat(1));
  std::vector<Rat> obj = {rat(1)};
  CHECK_THROWS_AS(solve(s, &obj), std::invalid_argument);
}

TEST_CASE("random systems always return verified certificates") {
  Rng rng(20240817);
  int optimal = 0, feasible = 0, infeasible = 0, unbounded = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int vars = 1 + static_cast<int>(rng.below(8));
    int rows = 1 + static_cast<int>(rng.below(12));
    LinearSystem s;
    for (int j = 0; j < vars; ++j) s.add_var("x" + std::to_string(j), rng.below(4) != 0);
    for (int k = 0; k < rows; ++k) {
      std::vector<Rat> coef(vars);
      for (int j = 0; j < vars; ++j) coef[j] = rat(rng.range(-4, 4));
      Rel rel = rng.below(4) == 0 ? Rel::Eq : (rng.below(2) ? Rel::Le : Rel::Ge);
      s.add(coef, rel, rat(rng.range(-6, 6)));
    }
    bool with_obj = rng.below(3) != 0;
    std::vector<Rat> obj(vars);
    for (int j = 0; j < vars; ++j) obj[j] = rat(rng.range(-3, 3));
    Sense sense = rng.below(2) ? Sense::Max : Sense::Min;

    LpResult res = solve(s, with_obj ? &obj : nullptr, sense);
    switch (res.status) {
      case LpStatus::Optimal:
        ++optimal;
        check_optimal(s, obj, sense, res);
        break;
      case LpStatus::Feasible:
        ++feasible;
        CHECK(verify_point(s, res.point));
        break;
      case LpStatus::Infeasible:
        ++infeasible;
        CHECK(verify_farkas(s, res.farkas));
        break;
      case LpStatus::Unbounded:
        ++unbounded;
        check_unbounded(s, obj, sense, res);
        break;
    }
  }
  // The corpus must exercise every outcome.
  CHECK(optimal > 20);
  CHECK(feasible > 20);
  CHECK(infeasible > 20);
  CHECK(unbounded > 20);
}
