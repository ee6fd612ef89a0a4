#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qsched/stochastic.hpp"
#include "qsched/topology.hpp"

namespace qsched {

using VectorXl = Eigen::Matrix<int64_t, Eigen::Dynamic, 1>;

/// Mutable per-run state: the ebit and demand queue vectors plus cumulative
/// accounting. Vectors are indexed by the TransitionSystem queue order.
struct NetworkState {
  VectorXl q;  // ebits stored per queue
  VectorXl d;  // pending demands per queue; permanently zero off user pairs
  int64_t t = 0;

  VectorXl arrived_demands;
  VectorXl served_demands;
  int64_t generated_ebits = 0;
  int64_t lost_ebits = 0;
  int64_t consumed_ebits = 0;
  int64_t swaps_executed = 0;

  static NetworkState zero(const TransitionSystem& ts);
};

/// What happened during one step, assessed at its end: ebit arrivals a,
/// losses l and demand arrivals b. Arrivals of the current step are not
/// subject to loss; losses are drawn against the start-of-step queue only.
struct StepObservation {
  VectorXl a;
  VectorXl l;
  VectorXl b;

  static StepObservation zero(const TransitionSystem& ts);
};

/// Scheduling decision: swap counts followed by consumption counts.
struct Decision {
  Eigen::VectorXi r;

  static Decision zero(const TransitionSystem& ts);
};

struct Availability {
  VectorXl ebit;    // q - l + a
  VectorXl demand;  // d + b
};

/// Draws one step's arrivals and losses. Loss is drawn the same way for
/// physical and virtual queues; generation only happens on physical queues
/// and demand arrivals only on user pairs. Sampling order is fixed (queue
/// index order; a, then l, then b per queue) for reproducibility.
StepObservation observe_step(const NetworkState& state, const TransitionSystem& ts,
                             RandomSource& rng);

/// Supply vectors a decision must respect: -M~ r <= ebit, -N~ r <= demand.
Availability availability(const NetworkState& state, const StepObservation& obs);

/// Advances the state by one step:
///   q(t+1) = q(t) - l(t) + a(t) + M~ r(t)
///   d(t+1) = d(t) + b(t) + N~ r(t)
/// and updates the cumulative counters. Throws FeasibilityError naming the
/// first queue a decision would drive negative; policies must pre-clamp.
void apply_step(NetworkState& state, const TransitionSystem& ts,
                const StepObservation& obs, const Decision& decision);

/// Conservation audit: generated - lost - consumed - swaps - sum(q).
/// Zero at every step boundary (each binary swap nets -1 ebit).
int64_t total_ebit_balance(const NetworkState& state);

/// Demand audit: sum(arrived - served - d), zero at every step boundary.
int64_t total_demand_balance(const NetworkState& state);

}  // namespace qsched
