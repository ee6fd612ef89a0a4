#include "qsched/simulate.hpp"

#include <chrono>
#include <fstream>

#include "qsched/errors.hpp"
#include "qsched/policies.hpp"

namespace qsched {

RunReport run_simulation(const SimConfig& cfg, const StepCallback& on_step) {
  return run_simulation(cfg, build_transition_system(cfg.spec), on_step);
}

RunReport run_simulation(const SimConfig& cfg, const TransitionSystem& ts,
                         const StepCallback& on_step) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  NetworkState state = NetworkState::zero(ts);
  RandomSource rng(cfg.seed);
  Eigen::VectorXd q_accum = Eigen::VectorXd::Zero(ts.num_queues());

  for (int64_t step = 0; step < cfg.steps; ++step) {
    const StepObservation obs = observe_step(state, ts, rng);
    Decision dec;
    try {
      dec = decide(cfg.policy, state, obs, ts, rng);
      apply_step(state, ts, obs, dec);
    } catch (const std::exception& e) {
      throw SpecError("step " + std::to_string(step) + ": " + e.what());
    }
    q_accum += state.q.cast<double>();
    if (on_step) on_step(state, obs, dec);
  }

  RunReport report;
  for (const auto& user : cfg.spec.users) {
    const int e = ts.queue_index(user.a, user.b);
    PairReport pr;
    pr.a = user.a;
    pr.b = user.b;
    pr.arrived = state.arrived_demands[e];
    pr.served = state.served_demands[e];
    pr.unserved_fraction =
        pr.arrived == 0 ? 0.0
                        : 1.0 - static_cast<double>(pr.served) / static_cast<double>(pr.arrived);
    report.pairs.push_back(pr);
  }
  report.final_q_total = state.q.sum();
  report.final_d_total = state.d.sum();
  report.mean_queue_len = q_accum / static_cast<double>(cfg.steps);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

struct TraceWriter::Impl {
  const TransitionSystem& ts;
  std::ofstream out;
};

TraceWriter::TraceWriter(const TransitionSystem& ts, const std::string& path)
    : impl_(new Impl{ts, std::ofstream(path)}) {
  if (!impl_->out) {
    delete impl_;
    throw SpecError("cannot open trace file: " + path);
  }
  auto& out = impl_->out;
  out << "step";
  for (int e = 0; e < ts.num_queues(); ++e) out << ",q_" << ts.queue_name(e);
  for (int e = 0; e < ts.num_queues(); ++e) out << ",d_" << ts.queue_name(e);
  for (int t = 0; t < ts.num_transitions(); ++t) out << ",r_" << ts.transition_name(t);
  for (int e = 0; e < ts.num_queues(); ++e) out << ",c_" << ts.queue_name(e);
  out << "\n";
}

TraceWriter::~TraceWriter() { delete impl_; }

StepCallback TraceWriter::callback() {
  return [this](const NetworkState& state, const StepObservation&, const Decision& dec) {
    auto& out = impl_->out;
    out << (state.t - 1);
    for (Eigen::Index i = 0; i < state.q.size(); ++i) out << "," << state.q[i];
    for (Eigen::Index i = 0; i < state.d.size(); ++i) out << "," << state.d[i];
    for (Eigen::Index i = 0; i < dec.r.size(); ++i) out << "," << dec.r[i];
    out << "\n";
  };
}

}  // namespace qsched
