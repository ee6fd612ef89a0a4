#include "qsched/policies.hpp"

#include <algorithm>
#include <numeric>

#include "qsched/errors.hpp"

namespace qsched {

PolicyKind policy_kind_from_name(const std::string& name) {
  if (name == "greedy") return PolicyKind::greedy;
  if (name == "global_mw") return PolicyKind::global_mw;
  if (name == "local_mw") return PolicyKind::local_mw;
  throw SpecError("unknown policy: " + name + " (expected greedy, global_mw or local_mw)");
}

std::string policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::greedy: return "greedy";
    case PolicyKind::global_mw: return "global_mw";
    case PolicyKind::local_mw: return "local_mw";
  }
  return "?";
}

namespace {

// Serves user pairs from running availabilities, in the given order.
void serve_users(const std::vector<int>& order, const TransitionSystem& ts,
                 VectorXl& ebit_avail, VectorXl& demand_avail, Decision& dec) {
  const int nt = ts.num_transitions();
  for (int e : order) {
    const int64_t served = std::min(ebit_avail[e], demand_avail[e]);
    if (served <= 0) continue;
    dec.r[nt + e] += static_cast<int>(served);
    ebit_avail[e] -= served;
    demand_avail[e] -= served;
  }
}

}  // namespace

Decision greedy_decide(const NetworkState& state, const StepObservation& obs,
                       const TransitionSystem& ts, RandomSource& rng) {
  Decision dec = Decision::zero(ts);
  Availability avail = availability(state, obs);

  std::vector<int> users;
  for (int e = 0; e < ts.num_queues(); ++e)
    if (ts.is_user_pair(e)) users.push_back(e);
  for (size_t i = users.size(); i > 1; --i)
    std::swap(users[i - 1], users[rng.uniform_int(static_cast<int64_t>(i))]);

  // Requests first, then random linking, then whatever the links completed.
  serve_users(users, ts, avail.ebit, avail.demand, dec);

  std::vector<int> executable;
  for (;;) {
    executable.clear();
    for (int t = 0; t < ts.num_transitions(); ++t)
      if (avail.ebit[ts.input_queue_a(t)] >= 1 && avail.ebit[ts.input_queue_b(t)] >= 1)
        executable.push_back(t);
    if (executable.empty()) break;
    const int t = executable[rng.uniform_int(static_cast<int64_t>(executable.size()))];
    dec.r[t] += 1;
    avail.ebit[ts.input_queue_a(t)] -= 1;
    avail.ebit[ts.input_queue_b(t)] -= 1;
    avail.ebit[ts.output_queue(t)] += 1;
  }

  serve_users(users, ts, avail.ebit, avail.demand, dec);
  return dec;
}

namespace {

// w = gamma (d+b)^T N~ + s^T M~ evaluated columnwise; s is the ebit supply.
Eigen::VectorXd max_weight_vector(const TransitionSystem& ts, const Eigen::VectorXd& s,
                                  const Eigen::VectorXd& u, double gamma) {
  return (gamma * u.transpose() * ts.n_tilde().cast<double>() +
          s.transpose() * ts.m_tilde().cast<double>())
      .transpose();
}

}  // namespace

Decision global_mw_decide(const NetworkState& state, const StepObservation& obs,
                          const TransitionSystem& ts, const PolicyConfig& cfg) {
  const Availability avail = availability(state, obs);
  const Eigen::VectorXd s = avail.ebit.cast<double>();
  const Eigen::VectorXd u = avail.demand.cast<double>();
  IlpInstance inst{ts.m_tilde(), ts.n_tilde(), max_weight_vector(ts, s, u, cfg.gamma), s, u};
  return solve(inst, cfg.solver);
}

InfoSet build_info_set(const NetworkState& state, const StepObservation& obs,
                       const TransitionSystem& ts, int node) {
  if (node < 0 || node >= ts.num_nodes()) throw SpecError("build_info_set: unknown node");
  InfoSet info;
  info.node = node;
  info.exact_queues = ts.incident_queues(node);
  info.q = state.q;
  info.d = state.d;
  const auto n = static_cast<Eigen::Index>(info.exact_queues.size());
  info.exact_a.resize(n);
  info.exact_l.resize(n);
  info.exact_b.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int e = info.exact_queues[i];
    info.exact_a[i] = obs.a[e];
    info.exact_l[i] = obs.l[e];
    info.exact_b[i] = obs.b[e];
  }
  return info;
}

Decision local_mw_node_decide(const InfoSet& info, const TransitionSystem& ts,
                              const PolicyConfig& cfg) {
  const int nq = ts.num_queues();
  // Expected end-of-slot supplies given this node's information: exact for
  // incident queues, E[a]=alpha, E[l]=(1-eta)q, E[b]=beta elsewhere.
  Eigen::VectorXd s(nq), u(nq);
  for (int e = 0; e < nq; ++e) {
    const double q = static_cast<double>(info.q[e]);
    s[e] = ts.eta() * q + ts.alpha()[e];
    u[e] = static_cast<double>(info.d[e]) + ts.beta()[e];
  }
  for (size_t i = 0; i < info.exact_queues.size(); ++i) {
    const int e = info.exact_queues[i];
    s[e] = static_cast<double>(info.q[e] - info.exact_l[i] + info.exact_a[i]);
    u[e] = static_cast<double>(info.d[e] + info.exact_b[i]);
  }
  IlpInstance inst{ts.m_tilde(), ts.n_tilde(), max_weight_vector(ts, s, u, cfg.gamma), s, u};
  return solve(inst, cfg.solver);
}

Decision blend(const std::vector<Decision>& proposals, const NetworkState& state,
               const StepObservation& obs, const TransitionSystem& ts) {
  if (proposals.size() != static_cast<size_t>(ts.num_nodes()))
    throw SpecError("blend: expected one proposal per node");

  const int nt = ts.num_transitions();
  const int nq = ts.num_queues();
  Availability avail = availability(state, obs);
  Decision dec = Decision::zero(ts);

  // Claimed counts: the measuring node owns each swap; endpoints must agree
  // on a consumption, so the smaller claim wins.
  std::vector<int64_t> swap_claim(nt), cons_claim(nq);
  for (int t = 0; t < nt; ++t)
    swap_claim[t] = proposals[ts.transitions()[t].j].r[t];
  for (int e = 0; e < nq; ++e) {
    const auto& key = ts.queues()[e];
    cons_claim[e] = std::min(proposals[key.u].r[nt + e], proposals[key.v].r[nt + e]);
  }

  int max_rank = 0;
  for (int e = 0; e < nq; ++e) max_rank = std::max(max_rank, ts.rank(e));

  // Ascending rank of the affected queue; user service before swapping at
  // equal rank. Clamping to the running availability makes a failed or
  // absent low-rank swap starve everything scheduled on top of it.
  for (int rank = 0; rank <= max_rank; ++rank) {
    for (int e = 0; e < nq; ++e) {
      if (ts.rank(e) != rank || cons_claim[e] <= 0) continue;
      const int64_t x = std::min({cons_claim[e], avail.ebit[e], avail.demand[e]});
      if (x <= 0) continue;
      dec.r[nt + e] += static_cast<int>(x);
      avail.ebit[e] -= x;
      avail.demand[e] -= x;
    }
    for (int t = 0; t < nt; ++t) {
      if (ts.rank(ts.output_queue(t)) != rank || swap_claim[t] <= 0) continue;
      const int in_a = ts.input_queue_a(t);
      const int in_b = ts.input_queue_b(t);
      const int64_t x = std::min({swap_claim[t], avail.ebit[in_a], avail.ebit[in_b]});
      if (x <= 0) continue;
      dec.r[t] += static_cast<int>(x);
      avail.ebit[in_a] -= x;
      avail.ebit[in_b] -= x;
      avail.ebit[ts.output_queue(t)] += x;
    }
  }
  return dec;
}

Decision local_mw_decide(const NetworkState& state, const StepObservation& obs,
                         const TransitionSystem& ts, const PolicyConfig& cfg) {
  std::vector<Decision> proposals;
  proposals.reserve(ts.num_nodes());
  for (int node = 0; node < ts.num_nodes(); ++node)
    proposals.push_back(local_mw_node_decide(build_info_set(state, obs, ts, node), ts, cfg));
  return blend(proposals, state, obs, ts);
}

Decision decide(const PolicyConfig& cfg, const NetworkState& state,
                const StepObservation& obs, const TransitionSystem& ts,
                RandomSource& rng) {
  switch (cfg.kind) {
    case PolicyKind::greedy: return greedy_decide(state, obs, ts, rng);
    case PolicyKind::global_mw: return global_mw_decide(state, obs, ts, cfg);
    case PolicyKind::local_mw: return local_mw_decide(state, obs, ts, cfg);
  }
  throw SpecError("decide: unhandled policy kind");
}

}  // namespace qsched
