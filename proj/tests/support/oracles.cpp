#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace qsched::testing {

namespace {

constexpr double kEps = 1e-9;

struct BruteState {
  const IlpInstance& inst;
  const std::vector<int64_t>* caps;
  int dim;
  int rows;
  Eigen::VectorXi r;
  Eigen::VectorXd m_slack;  // s + M~ r, must stay >= 0 at the leaf
  Eigen::VectorXd n_slack;  // u + N~ r
  double obj = 0.0;
  std::optional<OracleSolution> best;

  void recurse(int j, int64_t budget) {
    if (j == dim) {
      for (int e = 0; e < rows; ++e)
        if (m_slack[e] < -kEps || n_slack[e] < -kEps) return;
      if (!best || obj < best->objective - 0.0) {
        if (!best) best.emplace();
        best->decision.r = r;
        best->objective = obj;
      }
      return;
    }
    int64_t hi = budget;
    if (caps) hi = std::min(hi, (*caps)[j]);
    for (int64_t v = 0; v <= hi; ++v) {
      if (v > 0) {
        for (int e = 0; e < rows; ++e) {
          m_slack[e] += inst.m_tilde(e, j);
          n_slack[e] += inst.n_tilde(e, j);
        }
        obj += inst.w[j];
        r[j] += 1;
      }
      recurse(j + 1, budget - v);
    }
    m_slack -= static_cast<double>(hi) * inst.m_tilde.col(j).cast<double>();
    n_slack -= static_cast<double>(hi) * inst.n_tilde.col(j).cast<double>();
    obj -= static_cast<double>(hi) * inst.w[j];
    r[j] -= static_cast<int>(hi);
  }
};

}  // namespace

OracleSolution brute_force_solve(const IlpInstance& inst,
                                 const std::vector<int64_t>* var_caps) {
  BruteState st{inst, var_caps,
                static_cast<int>(inst.m_tilde.cols()),
                static_cast<int>(inst.m_tilde.rows()),
                Eigen::VectorXi::Zero(static_cast<int>(inst.m_tilde.cols())),
                inst.s, inst.u};
  double total = 0.0;
  for (int e = 0; e < st.rows; ++e) total += std::max(inst.s[e], 0.0);
  st.recurse(0, static_cast<int64_t>(std::floor(total + kEps)));
  return *st.best;  // r = 0 is always feasible, so a solution exists
}

NetworkSpec random_spec(RandomSource& rng, int max_nodes, int max_routes) {
  const int n = 2 + static_cast<int>(rng.uniform_int(max_nodes - 1));
  NetworkSpec spec;
  for (int i = 0; i < n; ++i) spec.nodes.push_back(std::string(1, static_cast<char>('A' + i)));

  const int n_routes = 1 + static_cast<int>(rng.uniform_int(max_routes));
  std::set<std::pair<int, int>> edges;
  for (int r = 0; r < n_routes; ++r) {
    // Random simple path over a random subset of nodes.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.uniform_int(static_cast<int64_t>(i))]);
    const int len = 2 + static_cast<int>(rng.uniform_int(n - 1));
    std::vector<NodeId> route;
    for (int i = 0; i < len; ++i) route.push_back(spec.nodes[perm[i]]);
    for (int i = 0; i + 1 < len; ++i)
      edges.emplace(std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1]));
    spec.users.push_back({route.front(), route.back(),
                          0.05 + 0.2 * static_cast<double>(rng.uniform_int(4))});
    spec.routes.push_back(std::move(route));
  }
  for (const auto& [u, v] : edges)
    spec.edges.push_back({spec.nodes[u], spec.nodes[v],
                          0.25 * static_cast<double>(1 + rng.uniform_int(8))});
  spec.eta = 0.5 + 0.5 * rng.next_unit();
  return spec;
}

OracleInstance random_instance(const TransitionSystem& ts, RandomSource& rng,
                               bool fractional, int64_t max_total_supply) {
  const int nq = ts.num_queues();
  const int dim = ts.decision_dim();
  OracleInstance inst;
  inst.w.resize(dim);
  for (int j = 0; j < dim; ++j) {
    inst.w[j] = static_cast<double>(rng.uniform_int(7) - 3);
    if (fractional) inst.w[j] += 0.25 * static_cast<double>(rng.uniform_int(4));
  }
  for (;;) {
    inst.s = Eigen::VectorXd::Zero(nq);
    inst.u = Eigen::VectorXd::Zero(nq);
    for (int e = 0; e < nq; ++e) {
      if (rng.uniform_int(2) == 0) inst.s[e] = static_cast<double>(rng.uniform_int(5));
      if (rng.uniform_int(2) == 0) inst.u[e] = static_cast<double>(rng.uniform_int(5));
      if (fractional) {
        inst.s[e] += 0.25 * static_cast<double>(rng.uniform_int(3));
        inst.u[e] += 0.25 * static_cast<double>(rng.uniform_int(3));
      }
    }
    if (inst.s.sum() <= static_cast<double>(max_total_supply)) break;
  }
  return inst;
}

VectorXl scalar_queue_update(const TransitionSystem& ts, const VectorXl& q,
                             const StepObservation& obs, const Decision& dec) {
  const int nt = ts.num_transitions();
  VectorXl next = q;
  for (int e = 0; e < ts.num_queues(); ++e) next[e] += obs.a[e] - obs.l[e];
  for (int t = 0; t < nt; ++t) {
    const auto& tr = ts.transitions()[t];
    const int64_t v = dec.r[t];
    // Outgoing for both inputs, incoming for the output, per the triple.
    next[ts.queue_index(tr.i, tr.j)] -= v;
    next[ts.queue_index(tr.j, tr.k)] -= v;
    next[ts.queue_index(tr.i, tr.k)] += v;
  }
  for (int e = 0; e < ts.num_queues(); ++e) next[e] -= dec.r[nt + e];
  return next;
}

Decision random_feasible_decision(const TransitionSystem& ts, const Availability& avail,
                                  RandomSource& rng) {
  Decision dec = Decision::zero(ts);
  VectorXl ebit = avail.ebit;
  VectorXl demand = avail.demand;
  for (int t = 0; t < ts.num_transitions(); ++t) {
    const int a = ts.input_queue_a(t);
    const int b = ts.input_queue_b(t);
    const int64_t cap = std::min(ebit[a], ebit[b]);
    if (cap <= 0) continue;
    const int64_t v = rng.uniform_int(cap + 1);
    if (v == 0) continue;
    dec.r[t] = static_cast<int>(v);
    ebit[a] -= v;
    ebit[b] -= v;
    ebit[ts.output_queue(t)] += v;
  }
  for (int e = 0; e < ts.num_queues(); ++e) {
    const int64_t cap = std::min(ebit[e], demand[e]);
    if (cap <= 0) continue;
    const int64_t v = rng.uniform_int(cap + 1);
    if (v == 0) continue;
    dec.r[ts.num_transitions() + e] = static_cast<int>(v);
    ebit[e] -= v;
    demand[e] -= v;
  }
  return dec;
}

}  // namespace qsched::testing
