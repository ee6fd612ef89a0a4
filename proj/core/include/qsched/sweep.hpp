#pragma once

#include <string>
#include <vector>

#include "qsched/simulate.hpp"

namespace qsched {

struct SweepPoint {
  int i1 = 0;  // index on axis 1
  int i2 = 0;
  int replication = 0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  uint64_t seed = 0;
  bool ok = false;
  std::string error;
  RunReport report;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> points;  // i1-major, then i2, then replication

  const SweepPoint& at(int i1, int i2, int replication = 0) const;
  /// Mean over replications of the chosen pair's unserved fraction.
  double unserved(int i1, int i2, int pair) const;
};

/// Deterministic per-point seed: base_seed XOR a hash of the grid index and
/// replication, so points are independent and reproducible individually.
uint64_t sweep_point_seed(uint64_t base_seed, int i1, int i2, int replication);

/// Runs every grid point (all replications) over a small thread pool.
/// Results are identical regardless of worker count or scheduling; a failed
/// point is recorded and the sweep continues. workers <= 0 means one per
/// hardware thread.
SweepResult run_sweep(const SweepSpec& sweep, const SimConfig& base_cfg, int workers = 0);

}  // namespace qsched
