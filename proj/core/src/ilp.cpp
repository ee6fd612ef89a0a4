#include "qsched/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "qsched/errors.hpp"

namespace qsched {

namespace {

constexpr double kSupplyEps = 1e-9;

int64_t floor_supply(double x) {
  if (x < 0) return 0;
  return static_cast<int64_t>(std::floor(x + kSupplyEps));
}

// Structural view of one decision variable (matrix column).
struct Column {
  int neg[2] = {-1, -1};  // consumed queues (one or two)
  int n_neg = 0;
  int pos = -1;            // produced queue, -1 for consumptions
  int64_t demand_cap = std::numeric_limits<int64_t>::max();
};

struct Analysis {
  std::vector<Column> cols;
  int num_rows = 0;
};

Analysis analyze(const IlpInstance& inst) {
  const auto& m = inst.m_tilde;
  const auto& n = inst.n_tilde;
  const int rows = static_cast<int>(m.rows());
  const int dim = static_cast<int>(m.cols());
  if (n.rows() != rows || n.cols() != dim)
    throw std::invalid_argument("ilp: m_tilde and n_tilde dimensions disagree");
  if (inst.w.size() != dim)
    throw std::invalid_argument("ilp: weight vector length does not match matrix columns");
  if (inst.s.size() != rows || inst.u.size() != rows)
    throw std::invalid_argument("ilp: supply vector length does not match matrix rows");

  Analysis an;
  an.num_rows = rows;
  an.cols.resize(dim);
  for (int j = 0; j < dim; ++j) {
    Column& col = an.cols[j];
    int sum = 0;
    for (int e = 0; e < rows; ++e) {
      const int mv = m(e, j);
      sum += mv;
      if (mv == -1) {
        if (col.n_neg == 2) throw std::invalid_argument("ilp: column consumes more than two queues");
        col.neg[col.n_neg++] = e;
      } else if (mv == 1) {
        if (col.pos >= 0) throw std::invalid_argument("ilp: column produces more than one queue");
        col.pos = e;
      } else if (mv != 0) {
        throw std::invalid_argument("ilp: matrix entries must be in {-1, 0, 1}");
      }
      const int nv = n(e, j);
      if (nv == -1)
        col.demand_cap = std::min(col.demand_cap, floor_supply(inst.u[e]));
      else if (nv != 0)
        throw std::invalid_argument("ilp: n_tilde entries must be in {-1, 0}");
    }
    if (sum != -1) throw std::invalid_argument("ilp: every m_tilde column must sum to -1");
  }
  return an;
}

// Fixpoint refinement of per-variable caps. Starts from the global budget
// (sum of all variables is bounded by total ebit supply) and repeatedly
// tightens each variable by its inputs' supply plus maximal inflow.
std::vector<int64_t> static_caps(const IlpInstance& inst, const Analysis& an) {
  const int dim = static_cast<int>(an.cols.size());
  double total = 0;
  for (int e = 0; e < an.num_rows; ++e) total += std::max(inst.s[e], 0.0);
  const int64_t budget = floor_supply(total);

  std::vector<int64_t> cap(dim);
  for (int j = 0; j < dim; ++j) cap[j] = std::min(budget, an.cols[j].demand_cap);

  std::vector<int64_t> inflow(an.num_rows);
  for (int pass = 0; pass < dim; ++pass) {
    std::fill(inflow.begin(), inflow.end(), int64_t{0});
    for (int j = 0; j < dim; ++j)
      if (an.cols[j].pos >= 0) inflow[an.cols[j].pos] += cap[j];
    bool changed = false;
    for (int j = 0; j < dim; ++j) {
      int64_t c = cap[j];
      for (int t = 0; t < an.cols[j].n_neg; ++t) {
        const int e = an.cols[j].neg[t];
        c = std::min(c, floor_supply(inst.s[e]) + inflow[e]);
      }
      if (c < cap[j]) {
        cap[j] = c;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return cap;
}

struct NegEntry {
  int local_pos;
  double w;
  int64_t cap;
};

class ComponentSolver {
 public:
  ComponentSolver(const IlpInstance& inst, const Analysis& an,
                  const std::vector<int64_t>& cap, std::vector<int> vars,
                  int64_t* node_budget)
      : inst_(inst), an_(an), cap_(cap), vars_(std::move(vars)), node_budget_(node_budget) {
    const int nv = static_cast<int>(vars_.size());
    // Suffix production table: fut_[p * rows + e] is the most that variables
    // at local positions >= p can still add to queue e.
    fut_.assign(static_cast<size_t>(nv + 1) * an_.num_rows, 0);
    for (int p = nv - 1; p >= 0; --p) {
      std::copy_n(&fut_[(p + 1) * static_cast<size_t>(an_.num_rows)], an_.num_rows,
                  &fut_[p * static_cast<size_t>(an_.num_rows)]);
      const Column& col = an_.cols[vars_[p]];
      if (col.pos >= 0) fut_[p * static_cast<size_t>(an_.num_rows) + col.pos] += cap_[vars_[p]];
    }
    for (int p = 0; p < nv; ++p) {
      const int j = vars_[p];
      if (inst_.w[j] < 0) negatives_.push_back({p, inst_.w[j], cap_[j]});
    }
    std::sort(negatives_.begin(), negatives_.end(),
              [](const NegEntry& a, const NegEntry& b) { return a.w < b.w; });

    avail_.resize(an_.num_rows);
    for (int e = 0; e < an_.num_rows; ++e) avail_[e] = inst_.s[e];
    budget_ = 0;
    double comp_supply = 0;
    seen_row_.assign(an_.num_rows, 0);
    for (int j : vars_) {
      const Column& col = an_.cols[j];
      for (int t = 0; t < col.n_neg; ++t) mark_row(col.neg[t], comp_supply);
      if (col.pos >= 0) mark_row(col.pos, comp_supply);
    }
    budget_ = floor_supply(comp_supply);
    values_.assign(vars_.size(), 0);
    best_values_.assign(vars_.size(), 0);
  }

  // Phase 1: optimal objective value. Phase 2: lexicographically smallest
  // vector attaining it. Returns per-variable values aligned with vars().
  const std::vector<int64_t>& run() {
    best_obj_ = 0.0;  // the zero vector is always feasible
    std::fill(best_values_.begin(), best_values_.end(), int64_t{0});
    phase_two_ = false;
    search(0, 0.0, budget_);
    phase_two_ = true;
    found_ = false;
    search(0, 0.0, budget_);
    return best_values_;
  }

  const std::vector<int>& vars() const { return vars_; }

 private:
  void mark_row(int e, double& comp_supply) {
    if (!seen_row_[e]) {
      seen_row_[e] = 1;
      comp_supply += std::max(inst_.s[e], 0.0);
    }
  }

  // Sum of the most negative remaining weights, each at its cap, limited by
  // the remaining total budget: a lower bound on any completion.
  double suffix_lower_bound(int p, int64_t budget) const {
    double lb = 0;
    for (const NegEntry& ne : negatives_) {
      if (budget <= 0) break;
      if (ne.local_pos < p) continue;
      const int64_t take = std::min(ne.cap, budget);
      lb += ne.w * static_cast<double>(take);
      budget -= take;
    }
    return lb;
  }

  void search(int p, double obj, int64_t budget) {
    if (phase_two_ && found_) return;
    if (--(*node_budget_) < 0)
      throw SolverBudgetError("ilp: node expansion budget exhausted");

    const int nv = static_cast<int>(vars_.size());
    if (p == nv) {
      if (phase_two_) {
        if (obj <= best_obj_) {
          best_values_ = values_;
          found_ = true;
        }
      } else if (obj < best_obj_) {
        best_obj_ = obj;
      }
      return;
    }

    const int j = vars_[p];
    const Column& col = an_.cols[j];
    const int64_t* fut_next = &fut_[(p + 1) * static_cast<size_t>(an_.num_rows)];

    int64_t hi = std::min(cap_[j], budget);
    for (int t = 0; t < col.n_neg; ++t) {
      const int e = col.neg[t];
      hi = std::min(hi, floor_supply(avail_[e] + static_cast<double>(fut_next[e])));
    }
    if (hi < 0) return;

    const double w = inst_.w[j];
    const bool descending = !phase_two_ && w < 0;

    for (int64_t step = 0; step <= hi; ++step) {
      const int64_t v = descending ? hi - step : step;
      const double child_obj = obj + w * static_cast<double>(v);
      const double bound = child_obj + suffix_lower_bound(p + 1, budget - v);
      if (phase_two_) {
        if (bound > best_obj_) continue;
      } else {
        if (bound >= best_obj_) continue;
      }

      for (int t = 0; t < col.n_neg; ++t) avail_[col.neg[t]] -= static_cast<double>(v);
      bool ok = true;
      if (col.pos >= 0) {
        avail_[col.pos] += static_cast<double>(v);
        // The production this column promised is no longer ahead of us.
        if (avail_[col.pos] + static_cast<double>(fut_next[col.pos]) < -kSupplyEps) ok = false;
      }
      if (ok) {
        values_[p] = v;
        search(p + 1, child_obj, budget - v);
        values_[p] = 0;
      }
      if (col.pos >= 0) avail_[col.pos] -= static_cast<double>(v);
      for (int t = 0; t < col.n_neg; ++t) avail_[col.neg[t]] += static_cast<double>(v);
      if (phase_two_ && found_) return;
    }
  }

  const IlpInstance& inst_;
  const Analysis& an_;
  const std::vector<int64_t>& cap_;
  std::vector<int> vars_;
  int64_t* node_budget_;
  std::vector<int64_t> fut_;
  std::vector<NegEntry> negatives_;
  std::vector<double> avail_;
  std::vector<char> seen_row_;
  std::vector<int64_t> values_;
  std::vector<int64_t> best_values_;
  int64_t budget_ = 0;
  double best_obj_ = 0.0;
  bool phase_two_ = false;
  bool found_ = false;
};

}  // namespace

Eigen::VectorXi upper_bounds(const IlpInstance& inst) {
  const Analysis an = analyze(inst);
  const std::vector<int64_t> cap = static_caps(inst, an);
  Eigen::VectorXi out(static_cast<int>(cap.size()));
  for (size_t j = 0; j < cap.size(); ++j)
    out[static_cast<int>(j)] = static_cast<int>(std::min<int64_t>(cap[j], INT32_MAX));
  return out;
}

Decision solve(const IlpInstance& inst, const SolveOptions& opts) {
  const Analysis an = analyze(inst);
  const int dim = static_cast<int>(an.cols.size());
  const std::vector<int64_t> cap = static_caps(inst, an);

  Decision dec;
  dec.r = Eigen::VectorXi::Zero(dim);

  // Union active variables into independent components over shared queues.
  std::vector<int> parent(an.num_rows);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int j = 0; j < dim; ++j) {
    if (cap[j] <= 0) continue;
    const Column& col = an.cols[j];
    int root = col.pos >= 0 ? find(col.pos) : find(col.neg[0]);
    for (int t = 0; t < col.n_neg; ++t) parent[find(col.neg[t])] = root = find(root);
    if (col.pos >= 0) parent[find(col.pos)] = root;
  }

  std::vector<std::vector<int>> comp_vars(an.num_rows);
  for (int j = 0; j < dim; ++j) {
    if (cap[j] <= 0) continue;
    const Column& col = an.cols[j];
    comp_vars[find(col.pos >= 0 ? col.pos : col.neg[0])].push_back(j);
  }

  int64_t node_budget = opts.max_nodes;
  for (auto& vars : comp_vars) {
    if (vars.empty()) continue;
    bool any_negative = false;
    for (int j : vars)
      if (inst.w[j] < 0) {
        any_negative = true;
        break;
      }
    if (!any_negative) continue;  // zero is optimal and lexicographically least

    ComponentSolver solver(inst, an, cap, std::move(vars), &node_budget);
    const auto& values = solver.run();
    for (size_t p = 0; p < values.size(); ++p)
      dec.r[solver.vars()[p]] = static_cast<int>(values[p]);
  }
  return dec;
}

}  // namespace qsched
