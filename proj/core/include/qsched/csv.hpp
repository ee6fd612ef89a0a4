#pragma once

#include <filesystem>
#include <vector>

#include "qsched/sweep.hpp"

namespace qsched {

/// One emitted sweep row. Fields mirror the CSV columns exactly.
struct CsvRow {
  double beta1 = 0.0;
  double beta2 = 0.0;
  int replication = 0;
  uint64_t seed = 0;
  double unserved1 = 0.0;
  double unserved2 = 0.0;
  int64_t served1 = 0;
  int64_t arrived1 = 0;
  int64_t served2 = 0;
  int64_t arrived2 = 0;
  int64_t final_q_total = 0;
  int64_t final_d_total = 0;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

/// The rows write_csv would emit: one per successful grid point and
/// replication, in grid order. Failed points are skipped.
std::vector<CsvRow> csv_rows(const SweepResult& result);

/// Header `beta1,beta2,replication,seed,unserved1,unserved2,served1,
/// arrived1,served2,arrived2,final_q_total,final_d_total`, then one row per
/// grid point per replication. Doubles are written with enough digits to
/// round-trip exactly.
void write_csv(const SweepResult& result, const std::filesystem::path& path);

/// Inverse of write_csv (modulo skipped failed points).
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

}  // namespace qsched
