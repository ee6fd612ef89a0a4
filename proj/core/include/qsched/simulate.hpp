#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsched/config.hpp"
#include "qsched/dynamics.hpp"

namespace qsched {

struct PairReport {
  NodeId a;
  NodeId b;
  int64_t arrived = 0;
  int64_t served = 0;
  /// 1 - served/arrived, or 0 when nothing arrived.
  double unserved_fraction = 0.0;
};

struct RunReport {
  std::vector<PairReport> pairs;  // one per user pair, spec order
  int64_t final_q_total = 0;
  int64_t final_d_total = 0;
  double wall_seconds = 0.0;
  Eigen::VectorXd mean_queue_len;  // time average of q per queue
};

/// Called after every applied step; used for trace output and tests.
using StepCallback =
    std::function<void(const NetworkState&, const StepObservation&, const Decision&)>;

/// Runs cfg.steps iterations of observe -> decide -> apply on a fresh
/// network. Deterministic for a fixed config (seed included).
RunReport run_simulation(const SimConfig& cfg, const StepCallback& on_step = {});

/// Same loop against a prebuilt TransitionSystem (the sweep reuses one).
RunReport run_simulation(const SimConfig& cfg, const TransitionSystem& ts,
                         const StepCallback& on_step = {});

/// Writes "step,<q...>,<d...>,<r...>" per step with a header naming each
/// queue and transition; plug into run_simulation's callback.
class TraceWriter {
 public:
  TraceWriter(const TransitionSystem& ts, const std::string& path);
  ~TraceWriter();
  TraceWriter(const TraceWriter&) = delete;
  TraceWriter& operator=(const TraceWriter&) = delete;

  StepCallback callback();

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace qsched
