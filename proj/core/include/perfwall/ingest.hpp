#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perfwall::ingest {

enum class BenchmarkKind { HPL, HPCG };

std::string_view to_string(BenchmarkKind kind);
// Exact tag match ("HPL", "HPCG"); std::nullopt otherwise.
std::optional<BenchmarkKind> benchmark_from_string(std::string_view tag);

struct MachineRecord {
  std::string machine;
  double date = 0.0;  // fractional year: .0 = June list, .5 = November list
  BenchmarkKind benchmark = BenchmarkKind::HPL;
  std::optional<double> r_peak;  // flop/s
  double r_max = 0.0;            // flop/s
  std::optional<std::uint64_t> cores;

  friend bool operator==(const MachineRecord&, const MachineRecord&) = default;
};

struct DerivedRecord {
  MachineRecord record;
  std::optional<double> efficiency;   // needs r_peak
  std::optional<double> nonparallel;  // needs r_peak and cores >= 2
};

struct ParseWarning {
  std::size_t line;
  std::string message;
};

struct CsvFormat {
  char delimiter = ',';
  char comment = '#';
};

struct ParseResult {
  std::vector<MachineRecord> records;
  std::vector<ParseWarning> warnings;
};

// Reads `machine,date,benchmark,rpeak_flops,rmax_flops,cores`. The rate columns may
// carry a prefix in the header (rpeak_pflops, rmax_eflops, ...), which scales the
// values. rpeak and cores may be empty. Rows with r_max > r_peak are dropped with a
// warning; every other defect throws DataError with line and column.
ParseResult parse_records(std::istream& in, const CsvFormat& format = {});
ParseResult parse_records_file(const std::string& path, const CsvFormat& format = {});

// Canonical form accepted by parse_records (rates in flop/s, shortest round-trip digits).
void write_records(std::ostream& out, const std::vector<MachineRecord>& records);

std::vector<DerivedRecord> derive(const std::vector<MachineRecord>& records);

// External machine metadata keyed by (machine, date).
struct MachineMeta {
  std::string machine;
  double date = 0.0;
  std::optional<double> r_peak;
  std::optional<std::uint64_t> cores;
  std::string source;
};

// Reads `machine,date,rpeak_flops,cores,source`.
std::vector<MachineMeta> parse_metadata(std::istream& in, const CsvFormat& format = {});
std::vector<MachineMeta> parse_metadata_file(const std::string& path, const CsvFormat& format = {});

// Fills r_peak / cores that are missing in `records` from matching metadata rows.
// Values already present are never overwritten.
void apply_metadata(std::vector<MachineRecord>& records, const std::vector<MachineMeta>& meta);

struct TimelineEntry {
  std::string machine;
  std::vector<double> dates;   // strictly increasing
  std::vector<double> r_max;   // flop/s, parallel to dates
  std::vector<double> ratios;  // r_max[k+1] / r_max[k]
};

// Chronological r_max history of one machine for one benchmark.
// Throws DataError for an unknown machine or a repeated date.
TimelineEntry timeline(const std::vector<MachineRecord>& records, std::string_view machine,
                       BenchmarkKind benchmark = BenchmarkKind::HPL);

// Machine names in first-appearance order.
std::vector<std::string> machine_names(const std::vector<MachineRecord>& records);

}  // namespace perfwall::ingest
