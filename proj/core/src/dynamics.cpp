#include "qsched/dynamics.hpp"

#include "qsched/errors.hpp"

namespace qsched {

NetworkState NetworkState::zero(const TransitionSystem& ts) {
  NetworkState s;
  s.q = VectorXl::Zero(ts.num_queues());
  s.d = VectorXl::Zero(ts.num_queues());
  s.arrived_demands = VectorXl::Zero(ts.num_queues());
  s.served_demands = VectorXl::Zero(ts.num_queues());
  return s;
}

StepObservation StepObservation::zero(const TransitionSystem& ts) {
  StepObservation o;
  o.a = VectorXl::Zero(ts.num_queues());
  o.l = VectorXl::Zero(ts.num_queues());
  o.b = VectorXl::Zero(ts.num_queues());
  return o;
}

Decision Decision::zero(const TransitionSystem& ts) {
  Decision dec;
  dec.r = Eigen::VectorXi::Zero(ts.decision_dim());
  return dec;
}

StepObservation observe_step(const NetworkState& state, const TransitionSystem& ts,
                             RandomSource& rng) {
  StepObservation obs = StepObservation::zero(ts);
  const double eta = ts.eta();
  for (int e = 0; e < ts.num_queues(); ++e) {
    if (ts.is_physical(e) && ts.alpha()[e] > 0.0)
      obs.a[e] = rng.poisson(ts.alpha()[e]);
    if (state.q[e] > 0 && eta < 1.0)
      obs.l[e] = rng.binomial(state.q[e], 1.0 - eta);
    if (ts.is_user_pair(e) && ts.beta()[e] > 0.0)
      obs.b[e] = rng.poisson(ts.beta()[e]);
  }
  return obs;
}

Availability availability(const NetworkState& state, const StepObservation& obs) {
  return Availability{state.q - obs.l + obs.a, state.d + obs.b};
}

void apply_step(NetworkState& state, const TransitionSystem& ts,
                const StepObservation& obs, const Decision& decision) {
  const int nq = ts.num_queues();
  const int nt = ts.num_transitions();
  if (decision.r.size() != ts.decision_dim())
    throw FeasibilityError("decision vector has wrong dimension");
  if ((decision.r.array() < 0).any())
    throw FeasibilityError("decision vector has a negative component");

  const VectorXl mr = ts.m_tilde().cast<int64_t>() * decision.r.cast<int64_t>();
  const VectorXl nr = ts.n_tilde().cast<int64_t>() * decision.r.cast<int64_t>();
  const VectorXl q_next = state.q - obs.l + obs.a + mr;
  const VectorXl d_next = state.d + obs.b + nr;

  for (int e = 0; e < nq; ++e) {
    if (q_next[e] < 0)
      throw FeasibilityError("infeasible decision at step " + std::to_string(state.t) +
                             ": ebit queue " + ts.queue_name(e) + " would reach " +
                             std::to_string(q_next[e]));
    if (d_next[e] < 0)
      throw FeasibilityError("infeasible decision at step " + std::to_string(state.t) +
                             ": demand queue " + ts.queue_name(e) + " would reach " +
                             std::to_string(d_next[e]));
  }

  state.q = q_next;
  state.d = d_next;
  state.generated_ebits += obs.a.sum();
  state.lost_ebits += obs.l.sum();
  state.arrived_demands += obs.b;
  for (int t = 0; t < nt; ++t) state.swaps_executed += decision.r[t];
  for (int e = 0; e < nq; ++e) {
    const int64_t c = decision.r[nt + e];
    state.consumed_ebits += c;
    state.served_demands[e] += c;
  }
  state.t += 1;
}

int64_t total_ebit_balance(const NetworkState& state) {
  return state.generated_ebits - state.lost_ebits - state.consumed_ebits -
         state.swaps_executed - state.q.sum();
}

int64_t total_demand_balance(const NetworkState& state) {
  return (state.arrived_demands - state.served_demands - state.d).sum();
}

}  // namespace qsched
