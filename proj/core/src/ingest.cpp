#include "perfwall/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <regex>

#include "perfwall/errors.hpp"
#include "perfwall/model.hpp"
#include "perfwall/units.hpp"

namespace perfwall::ingest {

std::string_view to_string(BenchmarkKind kind) {
  return kind == BenchmarkKind::HPL ? "HPL" : "HPCG";
}

std::optional<BenchmarkKind> benchmark_from_string(std::string_view tag) {
  if (tag == "HPL") return BenchmarkKind::HPL;
  if (tag == "HPCG") return BenchmarkKind::HPCG;
  return std::nullopt;
}

namespace {

constexpr double kMinDate = 1990.0;
constexpr double kMaxDate = 2100.0;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits one CSV line; double-quoted fields may contain the delimiter and "" escapes.
std::vector<std::string> split_fields(std::string_view line, char delimiter, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"' && trim(current).empty()) {
      quoted = true;
      was_quoted = true;
      current.clear();
    } else if (c == delimiter) {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current += c;
    }
  }
  if (quoted) throw DataError("unterminated quoted field", line_no, fields.size() + 1);
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

double parse_number(std::string_view text, std::size_t line, std::size_t column, const char* what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value))
    throw DataError(std::string("bad ") + what + " '" + std::string(text) + "'", line, column);
  return value;
}

std::uint64_t parse_count(std::string_view text, std::size_t line, std::size_t column) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc{} && ptr == text.data() + text.size() && value >= 1) return value;
  // Accept "2.414592e6"-style integers too.
  const double d = parse_number(text, line, column, "core count");
  if (d < 1.0 || d != std::floor(d) || d > 1e15)
    throw DataError("core count must be a positive integer, got '" + std::string(text) + "'", line,
                    column);
  return static_cast<std::uint64_t>(d);
}

// A logical reader over non-blank, non-comment lines with their 1-based numbers.
class LineReader {
 public:
  LineReader(std::istream& in, char comment) : in_(in), comment_(comment) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line_no_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      const auto t = trim(line);
      if (t.empty() || t.front() == comment_) continue;
      return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  char comment_;
  std::size_t line_no_ = 0;
};

struct RateColumn {
  std::size_t index;
  double scale;
};

// Matches rpeak_flops, rpeak_pflops, rmax_eflops, ...
std::optional<double> rate_header_scale(const std::string& header, const std::string& stem) {
  static const std::regex pattern("^(rpeak|rmax)_([kmgtpe]?)flops$");
  std::smatch m;
  if (!std::regex_match(header, m, pattern) || m[1] != stem) return std::nullopt;
  if (m[2].length() == 0) return 1.0;
  return units::prefix_scale(m[2].str()[0]);
}

struct Header {
  std::map<std::string, std::size_t> plain;
  std::map<std::string, RateColumn> rates;
  std::size_t width = 0;
};

Header read_header(const std::vector<std::string>& fields, std::size_t line,
                   const std::vector<std::string>& plain_required,
                   const std::vector<std::string>& rate_required) {
  Header h;
  h.width = fields.size();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::string name = fields[i];
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    bool matched = false;
    for (const auto& stem : rate_required) {
      if (auto scale = rate_header_scale(name, stem)) {
        if (h.rates.count(stem)) throw DataError("duplicate column '" + stem + "'", line, i + 1);
        h.rates[stem] = {i, *scale};
        matched = true;
      }
    }
    if (!matched) {
      if (h.plain.count(name)) throw DataError("duplicate column '" + name + "'", line, i + 1);
      h.plain[name] = i;
    }
  }
  for (const auto& name : plain_required)
    if (!h.plain.count(name)) throw DataError("missing column '" + name + "'", line);
  for (const auto& stem : rate_required)
    if (!h.rates.count(stem)) throw DataError("missing column '" + stem + "_flops'", line);
  return h;
}

double parse_date(std::string_view text, std::size_t line, std::size_t column) {
  const double date = parse_number(text, line, column, "date");
  if (date < kMinDate || date > kMaxDate)
    throw DataError("date " + std::string(text) + " outside [1990, 2100]", line, column);
  return date;
}

std::optional<double> parse_rate(std::string_view text, const RateColumn& col, std::size_t line,
                                 bool required, const char* what) {
  if (text.empty()) {
    if (required) throw DataError(std::string("missing ") + what, line, col.index + 1);
    return std::nullopt;
  }
  const double v = parse_number(text, line, col.index + 1, what) * col.scale;
  if (!(v > 0.0)) throw DataError(std::string(what) + " must be > 0", line, col.index + 1);
  return v;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"#") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

ParseResult parse_records(std::istream& in, const CsvFormat& format) {
  ParseResult result;
  LineReader reader(in, format.comment);
  std::string line;
  if (!reader.next(line)) return result;

  const auto header = read_header(split_fields(line, format.delimiter, reader.line_no()),
                                  reader.line_no(), {"machine", "date", "benchmark", "cores"},
                                  {"rpeak", "rmax"});
  const auto c_machine = header.plain.at("machine");
  const auto c_date = header.plain.at("date");
  const auto c_bench = header.plain.at("benchmark");
  const auto c_cores = header.plain.at("cores");
  const auto& c_peak = header.rates.at("rpeak");
  const auto& c_max = header.rates.at("rmax");

  while (reader.next(line)) {
    const auto n = reader.line_no();
    const auto f = split_fields(line, format.delimiter, n);
    if (f.size() != header.width)
      throw DataError("expected " + std::to_string(header.width) + " fields, got " +
                          std::to_string(f.size()),
                      n, std::min(f.size(), header.width) + 1);

    MachineRecord r;
    r.machine = f[c_machine];
    if (r.machine.empty()) throw DataError("empty machine name", n, c_machine + 1);
    r.date = parse_date(f[c_date], n, c_date + 1);
    const auto bench = benchmark_from_string(f[c_bench]);
    if (!bench) throw DataError("unknown benchmark tag '" + f[c_bench] + "'", n, c_bench + 1);
    r.benchmark = *bench;
    r.r_peak = parse_rate(f[c_peak.index], c_peak, n, false, "rpeak");
    r.r_max = *parse_rate(f[c_max.index], c_max, n, true, "rmax");
    if (!f[c_cores].empty()) r.cores = parse_count(f[c_cores], n, c_cores + 1);

    if (r.r_peak && r.r_max > *r.r_peak) {
      result.warnings.push_back(
          {n, "rejected " + r.machine + ": rmax " + units::format_number(r.r_max) +
                  " exceeds rpeak " + units::format_number(*r.r_peak)});
      continue;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

ParseResult parse_records_file(const std::string& path, const CsvFormat& format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_records(in, format);
}

void write_records(std::ostream& out, const std::vector<MachineRecord>& records) {
  out << "machine,date,benchmark,rpeak_flops,rmax_flops,cores\n";
  for (const auto& r : records) {
    out << quote_if_needed(r.machine) << ',' << units::format_number(r.date) << ','
        << to_string(r.benchmark) << ',' << (r.r_peak ? units::format_number(*r.r_peak) : "")
        << ',' << units::format_number(r.r_max) << ','
        << (r.cores ? std::to_string(*r.cores) : "") << '\n';
  }
}

std::vector<DerivedRecord> derive(const std::vector<MachineRecord>& records) {
  std::vector<DerivedRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    DerivedRecord d{r, std::nullopt, std::nullopt};
    if (r.r_peak) {
      d.efficiency = r.r_max / *r.r_peak;
      if (r.cores && *r.cores >= 2)
        d.nonparallel =
            model::alpha_from_measurement(static_cast<double>(*r.cores), *d.efficiency).nonparallel();
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<MachineMeta> parse_metadata(std::istream& in, const CsvFormat& format) {
  std::vector<MachineMeta> out;
  LineReader reader(in, format.comment);
  std::string line;
  if (!reader.next(line)) return out;

  const auto header = read_header(split_fields(line, format.delimiter, reader.line_no()),
                                  reader.line_no(), {"machine", "date", "cores", "source"},
                                  {"rpeak"});
  const auto& c_peak = header.rates.at("rpeak");
  while (reader.next(line)) {
    const auto n = reader.line_no();
    const auto f = split_fields(line, format.delimiter, n);
    if (f.size() != header.width)
      throw DataError("expected " + std::to_string(header.width) + " fields", n);
    MachineMeta m;
    m.machine = f[header.plain.at("machine")];
    if (m.machine.empty()) throw DataError("empty machine name", n, header.plain.at("machine") + 1);
    m.date = parse_date(f[header.plain.at("date")], n, header.plain.at("date") + 1);
    m.r_peak = parse_rate(f[c_peak.index], c_peak, n, false, "rpeak");
    const auto c_cores = header.plain.at("cores");
    if (!f[c_cores].empty()) m.cores = parse_count(f[c_cores], n, c_cores + 1);
    m.source = f[header.plain.at("source")];
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MachineMeta> parse_metadata_file(const std::string& path, const CsvFormat& format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_metadata(in, format);
}

void apply_metadata(std::vector<MachineRecord>& records, const std::vector<MachineMeta>& meta) {
  for (auto& r : records) {
    const auto it = std::find_if(meta.begin(), meta.end(), [&](const MachineMeta& m) {
      return m.machine == r.machine && m.date == r.date;
    });
    if (it == meta.end()) continue;
    if (!r.r_peak && it->r_peak && *it->r_peak >= r.r_max) r.r_peak = it->r_peak;
    if (!r.cores) r.cores = it->cores;
  }
}

TimelineEntry timeline(const std::vector<MachineRecord>& records, std::string_view machine,
                       BenchmarkKind benchmark) {
  std::vector<const MachineRecord*> rows;
  for (const auto& r : records)
    if (r.machine == machine && r.benchmark == benchmark) rows.push_back(&r);
  if (rows.empty())
    throw DataError("unknown machine '" + std::string(machine) + "' for " +
                    std::string(to_string(benchmark)));

  std::stable_sort(rows.begin(), rows.end(),
                   [](const MachineRecord* a, const MachineRecord* b) { return a->date < b->date; });

  TimelineEntry entry;
  entry.machine = std::string(machine);
  for (const auto* r : rows) {
    if (!entry.dates.empty() && entry.dates.back() == r->date)
      throw DataError("duplicate date " + units::format_number(r->date) + " for machine '" +
                      entry.machine + "'");
    entry.dates.push_back(r->date);
    entry.r_max.push_back(r->r_max);
  }
  for (std::size_t k = 1; k < entry.r_max.size(); ++k)
    entry.ratios.push_back(entry.r_max[k] / entry.r_max[k - 1]);
  return entry;
}

std::vector<std::string> machine_names(const std::vector<MachineRecord>& records) {
  std::vector<std::string> names;
  for (const auto& r : records)
    if (std::find(names.begin(), names.end(), r.machine) == names.end()) names.push_back(r.machine);
  return names;
}

}  // namespace perfwall::ingest
