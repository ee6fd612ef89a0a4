#include "qsched/csv.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qsched/errors.hpp"

namespace qsched {

namespace {

constexpr const char* kHeader =
    "beta1,beta2,replication,seed,unserved1,unserved2,served1,arrived1,"
    "served2,arrived2,final_q_total,final_d_total";

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<CsvRow> csv_rows(const SweepResult& result) {
  std::vector<CsvRow> rows;
  rows.reserve(result.points.size());
  for (const SweepPoint& p : result.points) {
    if (!p.ok) continue;
    CsvRow row;
    row.beta1 = p.beta1;
    row.beta2 = p.beta2;
    row.replication = p.replication;
    row.seed = p.seed;
    row.unserved1 = p.report.pairs.at(0).unserved_fraction;
    row.unserved2 = p.report.pairs.at(1).unserved_fraction;
    row.served1 = p.report.pairs.at(0).served;
    row.arrived1 = p.report.pairs.at(0).arrived;
    row.served2 = p.report.pairs.at(1).served;
    row.arrived2 = p.report.pairs.at(1).arrived;
    row.final_q_total = p.report.final_q_total;
    row.final_d_total = p.report.final_d_total;
    rows.push_back(row);
  }
  return rows;
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << kHeader << "\n";
  for (const CsvRow& r : csv_rows(result)) {
    out << format_double(r.beta1) << ',' << format_double(r.beta2) << ','
        << r.replication << ',' << r.seed << ',' << format_double(r.unserved1) << ','
        << format_double(r.unserved2) << ',' << r.served1 << ',' << r.arrived1 << ','
        << r.served2 << ',' << r.arrived2 << ',' << r.final_q_total << ','
        << r.final_d_total << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error("unexpected CSV header in " + path.string());

  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 12)
      throw std::runtime_error("malformed CSV row in " + path.string() + ": " + line);
    CsvRow r;
    r.beta1 = std::stod(fields[0]);
    r.beta2 = std::stod(fields[1]);
    r.replication = std::stoi(fields[2]);
    r.seed = std::stoull(fields[3]);
    r.unserved1 = std::stod(fields[4]);
    r.unserved2 = std::stod(fields[5]);
    r.served1 = std::stoll(fields[6]);
    r.arrived1 = std::stoll(fields[7]);
    r.served2 = std::stoll(fields[8]);
    r.arrived2 = std::stoll(fields[9]);
    r.final_q_total = std::stoll(fields[10]);
    r.final_d_total = std::stoll(fields[11]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qsched
