#pragma once

#include <string>
#include <vector>

#include "qsched/dynamics.hpp"
#include "qsched/ilp.hpp"

namespace qsched {

enum class PolicyKind { greedy, global_mw, local_mw };

PolicyKind policy_kind_from_name(const std::string& name);  // throws SpecError
std::string policy_name(PolicyKind kind);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::greedy;
  double gamma = 1.0;  // demand-priority weight in the Max-Weight objective
  SolveOptions solver;
};

/// What one node can see when it states its own scheduling program:
/// exact end-of-slot observations for every queue touching the node,
/// start-of-slot global queue vectors, and the network averages.
struct InfoSet {
  int node = -1;
  std::vector<int> exact_queues;  // incident queues, physical and virtual
  VectorXl q;                     // start-of-slot, known network-wide
  VectorXl d;
  VectorXl exact_a;               // aligned with exact_queues
  VectorXl exact_l;
  VectorXl exact_b;
};

/// Demand-first random linking: serves user pairs from what is available,
/// then keeps executing uniformly random executable swaps until supplies
/// run out, then serves anything the swaps just completed. Ignores queue
/// weights entirely; uses the run's RandomSource for its choices.
Decision greedy_decide(const NetworkState& state, const StepObservation& obs,
                       const TransitionSystem& ts, RandomSource& rng);

/// Fully informed Max-Weight: one exact integer program over the whole
/// network with weights gamma*(d+b)^T N~ + (q-l+a)^T M~.
Decision global_mw_decide(const NetworkState& state, const StepObservation& obs,
                          const TransitionSystem& ts, const PolicyConfig& cfg);

InfoSet build_info_set(const NetworkState& state, const StepObservation& obs,
                       const TransitionSystem& ts, int node);

/// One node's Max-Weight proposal: the same program as global_mw_decide but
/// with conditional expectations in place of unobserved quantities
/// (E[a]=alpha, E[l]=(1-eta) q, E[b]=beta off the node's own queues).
Decision local_mw_node_decide(const InfoSet& info, const TransitionSystem& ts,
                              const PolicyConfig& cfg);

/// Combines per-node proposals into one feasible decision. A swap is taken
/// from the node that performs the measurement; a consumption is the
/// minimum of its two endpoint proposals. Execution sweeps queues in
/// ascending rank, consumptions before swaps within a rank, clamping each
/// count to what is actually available so that shortfalls cascade to the
/// transitions that depended on them.
Decision blend(const std::vector<Decision>& proposals, const NetworkState& state,
               const StepObservation& obs, const TransitionSystem& ts);

/// All nodes propose, then blend.
Decision local_mw_decide(const NetworkState& state, const StepObservation& obs,
                         const TransitionSystem& ts, const PolicyConfig& cfg);

/// Dispatch on cfg.kind. Only the greedy policy draws from rng.
Decision decide(const PolicyConfig& cfg, const NetworkState& state,
                const StepObservation& obs, const TransitionSystem& ts,
                RandomSource& rng);

}  // namespace qsched
