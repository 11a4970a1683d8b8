#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "perfwall/contributions.hpp"
#include "perfwall/errors.hpp"
#include "perfwall/ingest.hpp"
#include "perfwall/model.hpp"
#include "perfwall/report.hpp"
#include "perfwall/units.hpp"

#ifndef PERFWALL_DATA_DIR
#define PERFWALL_DATA_DIR "data"
#endif

namespace perfwall::cli {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kFigureIds{"1", "3", "4", "5", "6A", "6B", "6C"};

std::string data_path(const std::string& file) {
  return (fs::path(PERFWALL_DATA_DIR) / file).string();
}

// Everything a subcommand may need, filled by CLI11 before dispatch.
struct CommandConfig {
  std::string preset;
  std::string n;
  std::string p;
  std::string alpha;
  std::string nonparallel;
  std::string rpeak;
  std::string rmax;
  std::string rpeak_min = "0.001E";
  std::string rpeak_max = "1.1E";
  std::string data;
  std::string meta;
  std::string out;
  std::string format = "csv";
  std::string unit = "E";
  std::vector<std::string> overrides;
  std::string figure_id;
  std::string machine;
  std::string benchmark = "HPL";
  std::string t;
  std::string density = "1";
  std::string accel = "9.81";
  std::string nmin = "1";
  std::string nmax = "1e8";
  std::string smin = "1e-9";
  std::string smax = "1e-1";
  std::size_t samples = 64;
};

struct ModelOverrides {
  std::optional<contrib::AlphaDecomposition> decomposition;
  std::optional<contrib::MachineModel> machine;
};

double number(const std::string& text, const char* flag) {
  try {
    return units::parse_quantity(text);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(flag) + ": " + e.what());
  }
}

char unit_prefix(const std::string& unit) {
  if (unit.size() != 1 || !units::prefix_scale(unit[0]) ||
      std::string("GPEgpe").find(unit[0]) == std::string::npos)
    throw std::invalid_argument("--unit must be one of G, P, E");
  return static_cast<char>(std::toupper(static_cast<unsigned char>(unit[0])));
}

std::string show_rate(double flops, char prefix) {
  return fmt::format("{} {}", units::format_number(flops / *units::prefix_scale(prefix)),
                     units::rate_unit(prefix));
}

// Applies key=value pairs onto a preset's constants. Unknown keys are usage errors.
ModelOverrides apply_overrides(const std::vector<std::string>& pairs,
                               const contrib::BenchmarkPreset& base) {
  ModelOverrides result;
  if (pairs.empty()) return result;
  auto d = base.decomposition;
  auto m = base.machine;
  const std::map<std::string, double*> slots{
      {"alpha_sw", &d.alpha_sw},
      {"ctx_switch_clocks", &d.ctx_switch_clocks},
      {"total_clocks", &d.total_clocks},
      {"loop_clocks_per_pu", &d.loop_clocks_per_pu},
      {"bio_factor", &d.bio_factor},
      {"perf_per_pu", &m.perf_per_pu},
      {"clock_freq", &m.clock_freq},
  };
  for (const auto& pair : pairs) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--override expects key=value, got '" + pair + "'");
    const auto key = pair.substr(0, eq);
    const auto it = slots.find(key);
    if (it == slots.end()) {
      std::string keys;
      for (const auto& [k, v] : slots) keys += (keys.empty() ? "" : ", ") + k;
      throw std::invalid_argument("unknown override '" + key + "' (valid: " + keys + ")");
    }
    *it->second = number(pair.substr(eq + 1), "--override");
  }
  d.validate();
  m.validate();
  result.decomposition = d;
  result.machine = m;
  return result;
}

std::vector<ingest::MachineRecord> load_records(const std::string& path, const std::string& meta_path,
                                                std::ostream& err) {
  auto parsed = ingest::parse_records_file(path);
  for (const auto& w : parsed.warnings) err << "warning: " << path << ": line " << w.line << ": " << w.message << '\n';
  if (!meta_path.empty()) ingest::apply_metadata(parsed.records, ingest::parse_metadata_file(meta_path));
  return std::move(parsed.records);
}

void write_set(const report::CurveSet& set, const CommandConfig& cfg, std::ostream& out) {
  const bool svg = cfg.format == "svg";
  if (cfg.out.empty() || cfg.out == "-") {
    svg ? report::emit_svg(set, out) : report::emit_csv(set, out);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw DataError("cannot write '" + cfg.out + "'");
  svg ? report::emit_svg(set, file) : report::emit_csv(set, file);
}

void report_peak(const contrib::PeakPoint& peak, std::ostream& err) {
  err << fmt::format("peak: N* = {} (integer {}), R_Peak* = {}, R_Max* = {}\n",
                     units::format_number(peak.n_star), units::format_number(peak.n_star_integer),
                     show_rate(peak.r_peak_star, 'E'), show_rate(peak.r_max_star, 'E'));
}

// --------------------------------------------------------------------------

int cmd_predict(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const char prefix = unit_prefix(cfg.unit);
  if (!cfg.preset.empty()) {
    if (cfg.rpeak.empty()) throw std::invalid_argument("predict --preset needs --rpeak");
    const auto& base = contrib::preset(cfg.preset);
    const auto ov = apply_overrides(cfg.overrides, base);
    const auto d = ov.decomposition.value_or(base.decomposition);
    const auto m = ov.machine.value_or(base.machine);
    const double r_peak = number(cfg.rpeak, "--rpeak");
    const auto point = contrib::rmax_of_rpeak(r_peak, m, d);
    const double n = r_peak / m.perf_per_pu;
    const double s = contrib::alpha_total(n, d);
    out << "preset: " << base.name << '\n'
        << "N: " << units::format_number(n) << '\n'
        << "nonparallel (1-alpha): " << units::format_number(s) << '\n'
        << "alpha: " << units::format_number(1.0 - s) << '\n'
        << "r_peak: " << show_rate(point.r_peak, prefix) << '\n'
        << "r_max: " << show_rate(point.r_max, prefix) << '\n'
        << "efficiency: " << units::format_number(point.efficiency) << '\n';
    if (d.slope() > 0.0) {
      const auto peak = contrib::peak_point(m, d);
      if (r_peak > peak.r_peak_star) {
        err << "warning: operating point is past the performance peak; adding PUs lowers R_Max\n";
        report_peak(peak, err);
      }
    }
    return kExitOk;
  }

  if (!cfg.overrides.empty()) throw std::invalid_argument("--override needs --preset");
  if (cfg.n.empty() || cfg.p.empty())
    throw std::invalid_argument("predict needs --n and --p (or --preset and --rpeak)");
  if (cfg.alpha.empty() == cfg.nonparallel.empty())
    throw std::invalid_argument("predict needs exactly one of --alpha or --nonparallel");
  const auto fraction = cfg.alpha.empty()
                            ? model::ParallelFraction::from_nonparallel(number(cfg.nonparallel, "--nonparallel"))
                            : model::ParallelFraction::from_alpha(number(cfg.alpha, "--alpha"));
  const model::ParallelSystem sys{number(cfg.n, "--n"), number(cfg.p, "--p"), fraction};
  const double classic = model::classic_total_perf(sys);
  const double modern = model::modern_total_perf(sys);
  out << "N: " << units::format_number(sys.n_proc) << '\n'
      << "alpha: " << units::format_number(fraction.alpha()) << '\n'
      << "nonparallel (1-alpha): " << units::format_number(fraction.nonparallel()) << '\n'
      << "r_peak: " << show_rate(classic, prefix) << '\n'
      << "r_max: " << show_rate(modern, prefix) << '\n'
      << "efficiency: " << units::format_number(model::efficiency(sys.n_proc, fraction)) << '\n';
  if (fraction.nonparallel() > 0.0)
    out << "saturation: " << show_rate(model::saturation_limit(sys.perf_single, fraction.nonparallel()), prefix)
        << '\n';
  return kExitOk;
}

int cmd_invert(const CommandConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.n.empty() || cfg.rpeak.empty() || cfg.rmax.empty())
    throw std::invalid_argument("invert needs --n, --rpeak and --rmax");
  const double n = number(cfg.n, "--n");
  const double r_peak = number(cfg.rpeak, "--rpeak");
  const double r_max = number(cfg.rmax, "--rmax");
  if (!(r_peak > 0.0)) throw std::invalid_argument("--rpeak must be > 0");
  const double e = r_max / r_peak;
  if (e > 1.0) throw DataError("r_max exceeds r_peak");
  const auto fraction = model::alpha_from_measurement(n, e);
  out << "efficiency: " << units::format_number(e) << '\n'
      << "nonparallel (1-alpha_eff): " << units::format_number(fraction.nonparallel()) << '\n'
      << "alpha_eff: " << units::format_number(fraction.alpha()) << '\n';
  return kExitOk;
}

int cmd_sweep(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto& base = contrib::preset(cfg.preset.empty() ? "HPL" : cfg.preset);
  const auto ov = apply_overrides(cfg.overrides, base);
  report::ContributionOptions opts;
  opts.r_peak_min = number(cfg.rpeak_min, "--rpeak-min");
  opts.r_peak_max = number(cfg.rpeak_max, "--rpeak-max");
  opts.decomposition = ov.decomposition;
  opts.machine = ov.machine;
  auto set = report::fig6_panel(base.kind, opts);
  // Keep only the payload curve; the full panel is `figure 6X`.
  set.title = "R_Max sweep, " + std::string(base.name);
  std::erase_if(set.series, [](const report::Series& s) { return s.name != "R_Max"; });
  set.overlays.clear();
  set.y_axis = *set.y2_axis;
  set.y2_axis.reset();
  for (auto& s : set.series) s.axis = report::YAxis::Primary;
  write_set(set, cfg, out);

  const auto d = ov.decomposition.value_or(base.decomposition);
  const auto m = ov.machine.value_or(base.machine);
  if (d.slope() > 0.0) report_peak(contrib::peak_point(m, d), err);
  return kExitOk;
}

int cmd_surface(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  report::SurfaceOptions opts;
  opts.n_min = number(cfg.nmin, "--nmin");
  opts.n_max = number(cfg.nmax, "--nmax");
  opts.nonparallel_min = number(cfg.smin, "--smin");
  opts.nonparallel_max = number(cfg.smax, "--smax");
  opts.n_samples = opts.nonparallel_samples = cfg.samples;
  if (cfg.samples < 2) throw std::invalid_argument("--samples must be >= 2");
  std::vector<report::MeasuredEfficiency> measured;
  if (!cfg.data.empty())
    measured = report::measured_efficiencies(load_records(cfg.data, cfg.meta, err));
  write_set(report::fig1_surface(opts, measured), cfg, out);
  return kExitOk;
}

int cmd_timeline(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto path = cfg.data.empty() ? data_path("fig3_timeline.csv") : cfg.data;
  const auto records = load_records(path, cfg.meta, err);
  const auto bench = ingest::benchmark_from_string(cfg.benchmark);
  if (!bench) throw std::invalid_argument("--benchmark must be HPL or HPCG");
  const auto names = cfg.machine.empty() ? ingest::machine_names(records)
                                         : std::vector<std::string>{cfg.machine};
  out << "machine,date,rmax_pflops,ratio\n";
  for (const auto& name : names) {
    if (cfg.machine.empty() &&
        std::none_of(records.begin(), records.end(),
                     [&](const auto& r) { return r.machine == name && r.benchmark == *bench; }))
      continue;
    const auto entry = ingest::timeline(records, name, *bench);
    for (std::size_t k = 0; k < entry.dates.size(); ++k) {
      out << name << ',' << units::format_number(entry.dates[k]) << ','
          << units::format_number(entry.r_max[k] / units::kPeta) << ','
          << (k == 0 ? "" : fmt::format("{:.4f}", entry.ratios[k - 1])) << '\n';
    }
  }
  return kExitOk;
}

int cmd_relativistic(const CommandConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.t.empty()) throw std::invalid_argument("relativistic needs --t");
  model::RelativisticParams params;
  params.accel = number(cfg.accel, "--accel");
  params.density = number(cfg.density, "--n");
  const double t = number(cfg.t, "--t");
  out << "t: " << units::format_number(t) << " s\n"
      << "classic speed: " << units::format_number(model::classic_speed(t, params.accel)) << " m/s\n"
      << "relativistic speed: " << units::format_number(model::relativistic_speed(t, params))
      << " m/s\n"
      << "limit c/n: " << units::format_number(params.limit()) << " m/s\n";
  return kExitOk;
}

report::CurveSet build_figure(const std::string& id, const CommandConfig& cfg, std::ostream& err) {
  if (id == "1") {
    const auto path = cfg.data.empty() ? data_path("fig4_points.csv") : cfg.data;
    const auto meta = cfg.meta.empty() ? data_path("machines_meta.csv") : cfg.meta;
    return report::fig1_surface({}, report::measured_efficiencies(load_records(path, meta, err)));
  }
  if (id == "3") {
    const auto path = cfg.data.empty() ? data_path("fig3_timeline.csv") : cfg.data;
    return report::fig3_timeline(load_records(path, cfg.meta, err));
  }
  if (id == "4") {
    const auto path = cfg.data.empty() ? data_path("fig4_points.csv") : cfg.data;
    return report::fig4_curves({}, load_records(path, cfg.meta, err));
  }
  if (id == "5") return report::fig5_curves();
  const auto kind = id == "6A" ? contrib::PresetKind::HPL
                    : id == "6B" ? contrib::PresetKind::HPCG
                                 : contrib::PresetKind::NN;
  const auto ov = apply_overrides(cfg.overrides, contrib::preset(kind));
  report::ContributionOptions opts;
  opts.decomposition = ov.decomposition;
  opts.machine = ov.machine;
  return report::fig6_panel(kind, opts);
}

int cmd_figure(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string id = cfg.figure_id;
  std::transform(id.begin(), id.end(), id.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (std::find(kFigureIds.begin(), kFigureIds.end(), id) == kFigureIds.end()) {
    std::string valid;
    for (const auto& v : kFigureIds) valid += (valid.empty() ? "" : ", ") + v;
    throw std::invalid_argument("unknown figure id '" + cfg.figure_id + "' (valid: " + valid + ")");
  }
  const auto set = build_figure(id, cfg, err);
  const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create '" + dir.string() + "': " + ec.message());

  const auto write = [&](const std::string& ext, auto&& emit) {
    const auto path = dir / ("fig" + id + ext);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write '" + path.string() + "'");
    emit(set, file);
    out << path.string() << '\n';
  };
  write(".csv", report::emit_csv);
  if (cfg.format == "svg") write(".svg", report::emit_svg);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"perfwall: saturating Amdahl performance model, contribution analysis and figure generation"};
  app.name("perfwall");
  app.require_subcommand(1, 1);

  const auto rate_help = [](const char* what) {
    return std::string(what) + " in flop/s; accepts prefix suffixes G, P, E (e.g. 0.1254E = 0.1254 Eflop/s)";
  };
  const auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--override", cfg.overrides,
                    "model constant key=value: alpha_sw, ctx_switch_clocks (clocks), total_clocks "
                    "(clocks), loop_clocks_per_pu (clocks), bio_factor, perf_per_pu (flop/s), "
                    "clock_freq (Hz)");
  };
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "svg"}));
    sub->add_option("--out,-o", cfg.out, "output path (default: standard output)");
  };

  auto* predict = app.add_subcommand("predict", "payload performance R_Max of a parallel system");
  predict->add_option("--n", cfg.n, "number of processing units (count)");
  predict->add_option("--p", cfg.p, rate_help("single-PU performance"));
  predict->add_option("--alpha", cfg.alpha, "parallel fraction alpha in [0,1] (dimensionless)");
  predict->add_option("--nonparallel", cfg.nonparallel, "nonparallel fraction (1-alpha) in [0,1]");
  predict->add_option("--preset", cfg.preset, "contribution preset: HPL, HPCG or NN");
  predict->add_option("--rpeak", cfg.rpeak, rate_help("nominal performance R_Peak"));
  predict->add_option("--unit", cfg.unit, "display prefix for flop/s: G, P or E");
  add_overrides(predict);

  auto* invert = app.add_subcommand("invert", "nonparallel fraction (1-alpha_eff) from a measurement");
  invert->add_option("--n", cfg.n, "number of processing units (count, >= 2)");
  invert->add_option("--rpeak", cfg.rpeak, rate_help("nominal performance R_Peak"));
  invert->add_option("--rmax", cfg.rmax, rate_help("measured payload performance R_Max"));

  auto* sweep = app.add_subcommand("sweep", "R_Max (Eflop/s) over an R_Peak range for a preset");
  sweep->add_option("--preset", cfg.preset, "contribution preset: HPL, HPCG or NN");
  sweep->add_option("--rpeak-min", cfg.rpeak_min, rate_help("lowest R_Peak"));
  sweep->add_option("--rpeak-max", cfg.rpeak_max, rate_help("highest R_Peak"));
  add_overrides(sweep);
  add_format(sweep);

  auto* surface = app.add_subcommand("surface", "efficiency grid E(N, 1-alpha)");
  surface->add_option("--nmin", cfg.nmin, "smallest N (count)");
  surface->add_option("--nmax", cfg.nmax, "largest N (count)");
  surface->add_option("--smin", cfg.smin, "smallest (1-alpha) (dimensionless)");
  surface->add_option("--smax", cfg.smax, "largest (1-alpha) (dimensionless)");
  surface->add_option("--samples", cfg.samples, "samples per axis");
  surface->add_option("--data", cfg.data, "measurement CSV overlaid as (N, 1-alpha_eff) points");
  surface->add_option("--meta", cfg.meta, "machine metadata CSV (rpeak flop/s, cores)");
  add_format(surface);

  auto* tl = app.add_subcommand("timeline", "R_Max history (Pflop/s) by fractional year with improvement ratios");
  tl->add_option("--data", cfg.data, "measurement CSV (dates in fractional years, rates in flop/s)");
  tl->add_option("--meta", cfg.meta, "machine metadata CSV");
  tl->add_option("--machine", cfg.machine, "only this machine");
  tl->add_option("--benchmark", cfg.benchmark, "HPL or HPCG");

  auto* rel = app.add_subcommand("relativistic", "speed of a body under constant acceleration");
  rel->add_option("--t", cfg.t, "time in seconds");
  rel->add_option("--n", cfg.density, "optical density n >= 1 (dimensionless)");
  rel->add_option("--accel", cfg.accel, "acceleration in m/s^2 (default 9.81)");

  auto* fig = app.add_subcommand("figure", "write figure data (CSV, optional SVG) into a directory");
  fig->add_option("id", cfg.figure_id, "figure id: 1, 3, 4, 5, 6A, 6B, 6C")->required();
  fig->add_option("--data", cfg.data, "measurement CSV for figures 1, 3 and 4 (rates in flop/s)");
  fig->add_option("--meta", cfg.meta, "machine metadata CSV");
  fig->add_option("--out,-o", cfg.out, "output directory (default: current directory)");
  fig->add_option("--format", cfg.format, "csv, or svg for CSV plus SVG")->check(CLI::IsMember({"csv", "svg"}));
  add_overrides(fig);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*predict) return cmd_predict(cfg, out, err);
    if (*invert) return cmd_invert(cfg, out, err);
    if (*sweep) return cmd_sweep(cfg, out, err);
    if (*surface) return cmd_surface(cfg, out, err);
    if (*tl) return cmd_timeline(cfg, out, err);
    if (*rel) return cmd_relativistic(cfg, out, err);
    if (*fig) return cmd_figure(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace perfwall::cli
