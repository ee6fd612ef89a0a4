#include "qsched/sweep.hpp"

#include <atomic>
#include <thread>

#include "qsched/errors.hpp"

namespace qsched {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t sweep_point_seed(uint64_t base_seed, int i1, int i2, int replication) {
  uint64_t h = splitmix64((static_cast<uint64_t>(static_cast<uint32_t>(i1)) << 40) ^
                          (static_cast<uint64_t>(static_cast<uint32_t>(i2)) << 20) ^
                          static_cast<uint64_t>(static_cast<uint32_t>(replication)));
  return base_seed ^ h;
}

const SweepPoint& SweepResult::at(int i1, int i2, int replication) const {
  const int reps = spec.replications;
  const size_t idx =
      (static_cast<size_t>(i1) * spec.axis2.count + i2) * reps + replication;
  return points.at(idx);
}

double SweepResult::unserved(int i1, int i2, int pair) const {
  double total = 0;
  int n = 0;
  for (int rep = 0; rep < spec.replications; ++rep) {
    const SweepPoint& p = at(i1, i2, rep);
    if (!p.ok) continue;
    total += p.report.pairs.at(pair).unserved_fraction;
    ++n;
  }
  if (n == 0) throw SpecError("sweep point has no successful replication");
  return total / n;
}

SweepResult run_sweep(const SweepSpec& sweep, const SimConfig& base_cfg, int workers) {
  SweepResult result;
  result.spec = sweep;

  // The swept pairs must exist in the base spec; their beta is overridden
  // per point, everything else is shared.
  auto pair_index = [&](const std::pair<NodeId, NodeId>& p) {
    for (size_t i = 0; i < base_cfg.spec.users.size(); ++i) {
      const auto& u = base_cfg.spec.users[i];
      if ((u.a == p.first && u.b == p.second) || (u.a == p.second && u.b == p.first))
        return static_cast<int>(i);
    }
    throw SpecError("sweep pair (" + p.first + ", " + p.second + ") is not a user pair");
  };
  const int u1 = pair_index(sweep.pair1);
  const int u2 = pair_index(sweep.pair2);
  if (u1 == u2) throw SpecError("sweep pairs must be two distinct user pairs");

  result.points.resize(static_cast<size_t>(sweep.axis1.count) * sweep.axis2.count *
                       sweep.replications);
  for (int i1 = 0; i1 < sweep.axis1.count; ++i1)
    for (int i2 = 0; i2 < sweep.axis2.count; ++i2)
      for (int rep = 0; rep < sweep.replications; ++rep) {
        const size_t idx =
            (static_cast<size_t>(i1) * sweep.axis2.count + i2) * sweep.replications + rep;
        SweepPoint& p = result.points[idx];
        p.i1 = i1;
        p.i2 = i2;
        p.replication = rep;
        p.beta1 = sweep.axis1.value(i1);
        p.beta2 = sweep.axis2.value(i2);
        p.seed = sweep_point_seed(base_cfg.seed, i1, i2, rep);
      }

  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(result.points.size()));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= result.points.size()) return;
      SweepPoint& p = result.points[idx];
      SimConfig cfg = base_cfg;
      cfg.spec.users[u1].beta = p.beta1;
      cfg.spec.users[u2].beta = p.beta2;
      cfg.seed = p.seed;
      try {
        p.report = run_simulation(cfg);
        p.ok = true;
      } catch (const std::exception& e) {
        p.ok = false;
        p.error = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return result;
}

}  // namespace qsched
