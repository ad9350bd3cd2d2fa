#pragma once
#include <string>
#include <vector>

#include "ice/rational.hpp"

namespace ice {

enum class Rel { Le, Ge, Eq };

struct Constraint {
  std::vector<Rat> coef;
  Rel rel;
  Rat rhs;
};

struct LinearSystem {
  int num_vars = 0;
  std::vector<std::string> var_names;  // optional tags, used in reports
  std::vector<char> nonneg;            // per-variable x >= 0 flag
  std::vector<Constraint> rows;

  void add_var(const std::string& name, bool nonnegative = true) {
    var_names.push_back(name);
    nonneg.push_back(nonnegative ? 1 : 0);
    ++num_vars;
  }
  void add(std::vector<Rat> coef, Rel rel, Rat rhs);

  bool operator==(const LinearSystem& other) const {
    if (num_vars != other.num_vars || nonneg != other.nonneg) return false;
    if (rows.size() != other.rows.size()) return false;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (rows[k].coef != other.rows[k].coef || rows[k].rel != other.rows[k].rel ||
          rows[k].rhs != other.rows[k].rhs)
        return false;
    return true;
  }
};

enum class LpStatus { Optimal, Feasible, Infeasible, Unbounded };
enum class Sense { Max, Min };

// point/value for Optimal, point for Feasible, farkas for Infeasible (one
// multiplier per original row, the convention verify_farkas documents),
// ray for Unbounded. dual carries the optimal row multipliers for Optimal
// outcomes so callers can check complementary slackness independently.
struct LpResult {
  LpStatus status;
  Rat value;
  std::vector<Rat> point;
  std::vector<Rat> farkas;
  std::vector<Rat> ray;
  std::vector<Rat> dual;
};

// Dense two-phase simplex over exact rationals, Bland's least-index rule
// throughout (entering: lowest eligible column; leaving: lowest basic
// variable among minimal ratios), so every run is deterministic and
// termination holds under degeneracy. Free variables are split x = x+ - x-.
// Without an objective the result is Feasible/Infeasible/(never Unbounded).
LpResult solve(const LinearSystem& system, const std::vector<Rat>* objective = nullptr,
               Sense sense = Sense::Max);

// Exact substitution check, no solver state involved.
bool verify_point(const LinearSystem& system, const std::vector<Rat>& point);

// Farkas convention: m_k >= 0 for every inequality row, any sign on
// equalities. Reading <= rows negated (so all inequalities face >=), the
// combination g = sum m_k a_k, h = sum m_k b_k must satisfy g_j = 0 on free
// variables, g_j <= 0 on nonnegative ones, and h > 0: every feasible x would
// give 0 >= g.x >= h > 0.
bool verify_farkas(const LinearSystem& system, const std::vector<Rat>& multipliers);

}  // namespace ice
