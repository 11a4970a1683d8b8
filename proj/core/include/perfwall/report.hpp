#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perfwall/contributions.hpp"
#include "perfwall/ingest.hpp"

namespace perfwall::report {

// Samples per model curve.
inline constexpr std::size_t kCurveSamples = 512;

enum class AxisScale { Linear, Log10 };

struct AxisSpec {
  std::string label;
  std::string unit;
  AxisScale scale = AxisScale::Linear;
  double min = 0.0;
  double max = 1.0;

  // min < max; log scale requires min > 0. Throws std::invalid_argument.
  void validate() const;
};

struct Point {
  double x;
  double y;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class YAxis { Primary, Secondary };

struct Series {
  std::string name;
  std::vector<Point> points;
  YAxis axis = YAxis::Primary;
};

// Gridded z(x, y), row-major: z[iy * x_values.size() + ix].
struct Grid {
  std::vector<double> x_values;
  std::vector<double> y_values;
  std::vector<double> z;
  std::string z_label;
};

struct CurveSet {
  std::string title;
  AxisSpec x_axis;
  AxisSpec y_axis;
  std::optional<AxisSpec> y2_axis;
  std::vector<Series> series;
  std::vector<Series> overlays;  // measured points, drawn as markers
  std::optional<Grid> grid;      // rendered as a heat map when present

  // Every series nonempty; points on log axes strictly positive.
  void validate() const;
};

// --- figure builders -------------------------------------------------------

struct SurfaceOptions {
  double n_min = 1.0;
  double n_max = 1e8;
  double nonparallel_min = 1e-9;
  double nonparallel_max = 1e-1;
  std::size_t n_samples = 64;
  std::size_t nonparallel_samples = 64;
};

struct MeasuredEfficiency {
  std::string label;
  double n_proc;
  double efficiency;
};

// Efficiency over log-sampled N and (1 - alpha). Grid CSV rows are one series per
// (1 - alpha) value with x = N, y = E. Measured (N, E) pairs are placed on the map at
// (N, 1 - alpha_eff).
CurveSet fig1_surface(const SurfaceOptions& options,
                      const std::vector<MeasuredEfficiency>& measured = {});

// Measured (N, E) pairs for every HPL/HPCG record that has r_peak and cores >= 2.
std::vector<MeasuredEfficiency> measured_efficiencies(const std::vector<ingest::MachineRecord>& records);

// r_max histories in Pflop/s against fractional year, plus "ratio:<machine>" series of
// successive improvement ratios on the secondary axis. Throws DataError on no data.
CurveSet fig3_timeline(const std::vector<ingest::MachineRecord>& records);

inline constexpr double kTaihulightRPeak = 0.1254e18;
inline constexpr double kTaihulightCores = 10649600.0;

struct RooflineOptions {
  std::vector<double> nonparallel{3.3e-8, 5e-7, 1e-5, 2.4e-5, 1e-4, 1.5e-3};
  double perf_per_pu = kTaihulightRPeak / kTaihulightCores;  // flop/s
  double r_peak_min = 1e-6 * 1e18;                           // flop/s
  double r_peak_max = 0.5 * 1e18;
};

// Neural-simulation system performance (r_peak, r_max) in flop/s, drawn as its own marker.
inline constexpr Point kNeuralSimulationPoint{9.83e-6 * 1e18, 8.39e-6 * 1e18};

// R_Max(R_Peak) in Eflop/s at constant (1 - alpha) per line, with the measured points
// overlaid per benchmark.
CurveSet fig4_curves(const RooflineOptions& options,
                     const std::vector<ingest::MachineRecord>& measured = {});

struct RelativisticOptions {
  double t_min = 86400.0;
  double t_max = 1e9;
  std::vector<double> densities{1.0, 2.0};
  double accel = 9.81;
};

CurveSet fig5_curves(const RelativisticOptions& options = {});

struct ContributionOptions {
  double r_peak_min = 0.001e18;  // flop/s
  double r_peak_max = 1.1e18;
  std::optional<contrib::AlphaDecomposition> decomposition;  // preset when empty
  std::optional<contrib::MachineModel> machine;
};

// alpha_sw, alpha_os, alpha_eff on the primary axis; R_Max (Eflop/s) on the
// secondary axis. Panels A and B carry their measured dot.
CurveSet fig6_panel(contrib::PresetKind kind, const ContributionOptions& options = {});

// --- emitters ---------------------------------------------------------------

// `series,x,y` rows; model series first, then overlays.
void emit_csv(const CurveSet& set, std::ostream& out);
// Standalone SVG 1.1; identical input gives identical bytes.
void emit_svg(const CurveSet& set, std::ostream& out);

// n points log-spaced over [lo, hi], endpoints exact.
std::vector<double> log_space(double lo, double hi, std::size_t n);

}  // namespace perfwall::report
