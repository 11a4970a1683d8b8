#include "perfwall/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "perfwall/errors.hpp"
#include "perfwall/model.hpp"
#include "perfwall/units.hpp"

namespace perfwall::report {

void AxisSpec::validate() const {
  if (!(min < max)) throw std::invalid_argument("axis '" + label + "': min must be < max");
  if (scale == AxisScale::Log10 && !(min > 0.0))
    throw std::invalid_argument("axis '" + label + "': log scale needs min > 0");
}

void CurveSet::validate() const {
  x_axis.validate();
  y_axis.validate();
  if (y2_axis) y2_axis->validate();
  const auto check = [&](const Series& s) {
    if (s.points.empty()) throw std::invalid_argument("series '" + s.name + "' is empty");
    const auto& y = (s.axis == YAxis::Secondary && y2_axis) ? *y2_axis : y_axis;
    for (const auto& p : s.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("series '" + s.name + "' has a non-finite point");
      if ((x_axis.scale == AxisScale::Log10 && p.x <= 0.0) ||
          (y.scale == AxisScale::Log10 && p.y <= 0.0))
        throw std::invalid_argument("series '" + s.name + "' has a nonpositive value on a log axis");
    }
  };
  for (const auto& s : series) check(s);
  for (const auto& s : overlays) check(s);
  if (grid && grid->z.size() != grid->x_values.size() * grid->y_values.size())
    throw std::invalid_argument("grid size mismatch");
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("log_space needs 0 < lo < hi");
  if (n < 2) throw std::invalid_argument("log_space needs at least 2 samples");
  std::vector<double> out(n);
  const double a = std::log10(lo);
  const double step = (std::log10(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(10.0, a + step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

constexpr double kExa = units::kExa;
constexpr double kPeta = units::kPeta;

}  // namespace

// fig1_surface

CurveSet fig1_surface(const SurfaceOptions& o, const std::vector<MeasuredEfficiency>& measured) {
  if (!(o.n_min >= 1.0 && o.n_max > o.n_min))
    throw std::invalid_argument("surface: need 1 <= n_min < n_max");
  if (!(o.nonparallel_min > 0.0 && o.nonparallel_max <= 1.0 &&
        o.nonparallel_min < o.nonparallel_max))
    throw std::invalid_argument("surface: (1 - alpha) range must lie in (0, 1]");

  CurveSet set;
  set.title = "Efficiency surface E(N, 1-alpha)";
  set.x_axis = {"number of processing units N", "", AxisScale::Log10, o.n_min, o.n_max};
  set.y_axis = {"nonparallel fraction (1-alpha)", "", AxisScale::Log10, o.nonparallel_min,
                o.nonparallel_max};

  Grid grid;
  grid.x_values = log_space(o.n_min, o.n_max, o.n_samples);
  grid.y_values = log_space(o.nonparallel_min, o.nonparallel_max, o.nonparallel_samples);
  grid.z_label = "efficiency";
  grid.z.reserve(grid.x_values.size() * grid.y_values.size());
  for (double s : grid.y_values) {
    const auto fraction = model::ParallelFraction::from_nonparallel(s);
    Series row{"efficiency@1-alpha=" + units::format_number(s), {}, YAxis::Primary};
    for (double n : grid.x_values) {
      const double e = model::efficiency(n, fraction);
      grid.z.push_back(e);
      row.points.push_back({n, e});
    }
    set.series.push_back(std::move(row));
  }
  set.grid = std::move(grid);

  std::map<std::string, Series> groups;
  std::vector<std::string> order;
  for (const auto& m : measured) {
    const auto s = model::alpha_from_measurement(m.n_proc, m.efficiency).nonparallel();
    if (!(s > 0.0)) continue;
    const std::string key = "measured " + m.label;
    if (!groups.count(key)) {
      groups[key] = Series{key, {}, YAxis::Primary};
      order.push_back(key);
    }
    groups[key].points.push_back({m.n_proc, s});
  }
  for (const auto& key : order) set.overlays.push_back(std::move(groups[key]));
  set.validate();
  return set;
}

std::vector<MeasuredEfficiency> measured_efficiencies(
    const std::vector<ingest::MachineRecord>& records) {
  std::vector<MeasuredEfficiency> out;
  for (const auto& r : records) {
    if (!r.r_peak || !r.cores || *r.cores < 2) continue;
    out.push_back({std::string(ingest::to_string(r.benchmark)), static_cast<double>(*r.cores),
                   r.r_max / *r.r_peak});
  }
  return out;
}

// fig3_timeline

CurveSet fig3_timeline(const std::vector<ingest::MachineRecord>& records) {
  if (records.empty()) throw DataError("no data");

  CurveSet set;
  set.title = "R_Max payload performance by year";
  double x_lo = 2010.0, x_hi = 2020.0, y_lo = 0.5, y_hi = 230.0, ratio_hi = 1.0;

  std::vector<Series> ratio_series;
  for (const auto& name : ingest::machine_names(records)) {
    // Machines with only HPCG rows have no HPL timeline.
    const bool has_hpl = std::any_of(records.begin(), records.end(), [&](const auto& r) {
      return r.machine == name && r.benchmark == ingest::BenchmarkKind::HPL;
    });
    if (!has_hpl) continue;
    const auto entry = ingest::timeline(records, name);
    Series s{name, {}, YAxis::Primary};
    for (std::size_t k = 0; k < entry.dates.size(); ++k) {
      const double y = entry.r_max[k] / kPeta;
      s.points.push_back({entry.dates[k], y});
      x_lo = std::min(x_lo, std::floor(entry.dates[k]));
      x_hi = std::max(x_hi, std::ceil(entry.dates[k]));
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
    set.series.push_back(std::move(s));
    if (!entry.ratios.empty()) {
      Series r{"ratio:" + name, {}, YAxis::Secondary};
      for (std::size_t k = 0; k < entry.ratios.size(); ++k) {
        r.points.push_back({entry.dates[k + 1], entry.ratios[k]});
        ratio_hi = std::max(ratio_hi, entry.ratios[k]);
      }
      ratio_series.push_back(std::move(r));
    }
  }
  if (set.series.empty()) throw DataError("no data");
  for (auto& r : ratio_series) set.series.push_back(std::move(r));

  set.x_axis = {"years", "", AxisScale::Linear, x_lo, x_hi};
  set.y_axis = {"R_Max", "Pflop/s", AxisScale::Log10, y_lo, y_hi};
  set.y2_axis = AxisSpec{"improvement ratio", "", AxisScale::Linear, 0.0, ratio_hi * 1.1};
  set.validate();
  return set;
}

// fig4_curves

CurveSet fig4_curves(const RooflineOptions& o, const std::vector<ingest::MachineRecord>& measured) {
  if (o.nonparallel.empty()) throw std::invalid_argument("fig4: no (1 - alpha) values");
  if (!(o.perf_per_pu > 0.0)) throw std::invalid_argument("fig4: perf_per_pu must be > 0");
  if (!(o.r_peak_min >= o.perf_per_pu && o.r_peak_max > o.r_peak_min))
    throw std::invalid_argument("fig4: need perf_per_pu <= r_peak_min < r_peak_max");

  CurveSet set;
  set.title = "R_Max vs R_Peak at constant (1-alpha)";
  set.x_axis = {"R_Peak", "Eflop/s", AxisScale::Log10, 1e-6, 0.5};
  set.y_axis = {"R_Max", "Eflop/s", AxisScale::Log10, 1e-6, 0.3};
  set.x_axis.min = std::min(set.x_axis.min, o.r_peak_min / kExa);
  set.x_axis.max = std::max(set.x_axis.max, o.r_peak_max / kExa);

  const auto r_peaks = log_space(o.r_peak_min, o.r_peak_max, kCurveSamples);
  for (double s : o.nonparallel) {
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("fig4: (1 - alpha) must lie in (0, 1]");
    const auto fraction = model::ParallelFraction::from_nonparallel(s);
    Series line{"1-alpha=" + units::format_number(s), {}, YAxis::Primary};
    for (double r_peak : r_peaks) {
      const model::ParallelSystem sys{r_peak / o.perf_per_pu, o.perf_per_pu, fraction};
      line.points.push_back({r_peak / kExa, model::modern_total_perf(sys) / kExa});
    }
    set.series.push_back(std::move(line));
  }

  for (auto kind : {ingest::BenchmarkKind::HPL, ingest::BenchmarkKind::HPCG}) {
    Series dots{"measured " + std::string(ingest::to_string(kind)), {}, YAxis::Primary};
    for (const auto& r : measured)
      if (r.benchmark == kind && r.r_peak) dots.points.push_back({*r.r_peak / kExa, r.r_max / kExa});
    if (!dots.points.empty()) set.overlays.push_back(std::move(dots));
  }
  set.overlays.push_back({"neural simulation system",
                          {{kNeuralSimulationPoint.x / kExa, kNeuralSimulationPoint.y / kExa}},
                          YAxis::Primary});
  set.validate();
  return set;
}

// fig5_curves

CurveSet fig5_curves(const RelativisticOptions& o) {
  if (!(o.t_min > 0.0 && o.t_max > o.t_min)) throw std::invalid_argument("fig5: need 0 < t_min < t_max");
  if (o.densities.empty()) throw std::invalid_argument("fig5: no optical densities");

  CurveSet set;
  set.title = "Relativistic speed of a body accelerated by g";
  set.x_axis = {"time", "s", AxisScale::Log10, o.t_min, o.t_max};
  set.y_axis = {"speed", "m/s", AxisScale::Log10, 1e6, 5e8};

  const auto times = log_space(o.t_min, o.t_max, kCurveSamples);
  for (double n : o.densities) {
    model::RelativisticParams params;
    params.accel = o.accel;
    params.density = n;
    params.validate();
    Series s{"v(t) n=" + units::format_number(n), {}, YAxis::Primary};
    for (double t : times) s.points.push_back({t, model::relativistic_speed(t, params)});
    set.y_axis.min = std::min(set.y_axis.min, s.points.front().y);
    set.series.push_back(std::move(s));
  }
  set.validate();
  return set;
}

// fig6_panel

CurveSet fig6_panel(contrib::PresetKind kind, const ContributionOptions& o) {
  const auto& p = contrib::preset(kind);
  const auto d = o.decomposition.value_or(p.decomposition);
  const auto m = o.machine.value_or(p.machine);
  d.validate();
  m.validate();
  if (!(o.r_peak_min >= m.perf_per_pu && o.r_peak_max > o.r_peak_min))
    throw std::invalid_argument("fig6: need perf_per_pu <= r_peak_min < r_peak_max");

  static constexpr const char* kPanelLetter[] = {"A", "B", "C"};
  const std::string bench(p.name);

  CurveSet set;
  set.title = std::string("Fig. 6") + kPanelLetter[static_cast<int>(kind)] +
              ": contributions to (1-alpha_eff) and R_Max, " + bench;
  set.x_axis = {"R_Peak", "Eflop/s", AxisScale::Log10, o.r_peak_min / kExa, o.r_peak_max / kExa};
  set.y_axis = {"(1-alpha_eff^" + bench + ")", "", AxisScale::Log10, 1e-10, 5e-4};
  set.y2_axis = AxisSpec{"R_Max^" + bench, "Eflop/s", AxisScale::Log10, 1e-5, 1.0};

  Series sw{"alpha_SW", {}, YAxis::Primary};
  Series os{"alpha_OS", {}, YAxis::Primary};
  Series total{"alpha_eff", {}, YAxis::Primary};
  Series rmax{"R_Max", {}, YAxis::Secondary};
  for (double r_peak : log_space(o.r_peak_min, o.r_peak_max, kCurveSamples)) {
    const double n = r_peak / m.perf_per_pu;
    const double x = r_peak / kExa;
    sw.points.push_back({x, d.alpha_sw});
    os.points.push_back({x, contrib::alpha_os(n, d)});
    total.points.push_back({x, contrib::alpha_total(n, d)});
    rmax.points.push_back({x, contrib::rmax_of_rpeak(r_peak, m, d).r_max / kExa});
  }
  if (!(d.alpha_sw > 0.0)) sw.points.clear();
  if (!sw.points.empty()) set.series.push_back(std::move(sw));
  set.series.push_back(std::move(os));
  set.series.push_back(std::move(total));
  set.series.push_back(std::move(rmax));

  if (kind == contrib::PresetKind::HPL)
    set.overlays.push_back({"measured HPL", {{0.00587, 0.005}}, YAxis::Secondary});
  else if (kind == contrib::PresetKind::HPCG)
    set.overlays.push_back({"measured HPCG", {{0.00587, 0.000095}}, YAxis::Secondary});
  set.validate();
  return set;
}

// ---------------------------------------------------------------- CSV

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void emit_csv(const CurveSet& set, std::ostream& out) {
  set.validate();
  out << "series,x,y\n";
  const auto rows = [&](const std::vector<Series>& group) {
    for (const auto& s : group) {
      const auto name = csv_field(s.name);
      for (const auto& p : s.points)
        out << name << ',' << units::format_number(p.x) << ',' << units::format_number(p.y) << '\n';
    }
  };
  rows(set.series);
  rows(set.overlays);
  if (!out) throw std::runtime_error("CSV write failed");
}

}  // namespace perfwall::report
