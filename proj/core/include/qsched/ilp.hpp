#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qsched/dynamics.hpp"

namespace qsched {

/// One per-step scheduling program:
///
///   min  w . r
///   s.t. -m_tilde r <= s   (ebit supply)
///        -n_tilde r <= u   (demand supply)
///        r in N^dim
///
/// r = 0 is always feasible and the column sums of m_tilde being -1 bound
/// the feasible region by sum(r) <= sum(s). Supplies may be fractional
/// (conditional expectations); the variables stay integer.
///
/// The matrices are referenced, not copied; the instance must not outlive
/// the TransitionSystem it was built from.
struct IlpInstance {
  const Eigen::MatrixXi& m_tilde;
  const Eigen::MatrixXi& n_tilde;
  Eigen::VectorXd w;
  Eigen::VectorXd s;
  Eigen::VectorXd u;
};

struct SolveOptions {
  /// Hard limit on branch-and-bound node expansions; exceeding it throws
  /// SolverBudgetError. The solver never degrades to a heuristic answer.
  int64_t max_nodes = 100'000'000;
};

/// Exact optimum by depth-first branch and bound. Deterministic; among
/// multiple optima returns the lexicographically smallest vector.
Decision solve(const IlpInstance& inst, const SolveOptions& opts = {});

/// Valid per-variable upper bounds: no feasible point exceeds them.
/// A swap is limited by each input's supply plus everything that could
/// still be produced into it; a consumption additionally by its demand.
Eigen::VectorXi upper_bounds(const IlpInstance& inst);

}  // namespace qsched
