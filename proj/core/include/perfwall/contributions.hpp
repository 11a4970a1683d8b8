#pragma once

#include <array>
#include <string_view>

#include "perfwall/model.hpp"

namespace perfwall::contrib {

// Sources of the nonparallel fraction (1 - alpha_eff^total) of a measurement:
//   alpha_sw                         software (inherently serial part of the task)
//   ctx_switch_clocks / total        one OS context change per measurement
//   bio * loop * N / total           orchestration loop touching every PU
// The result is affine in N: constant_part() + slope() * N.
struct AlphaDecomposition {
  double alpha_sw = 0.0;
  double ctx_switch_clocks = 0.0;
  double total_clocks = 1.0;
  double loop_clocks_per_pu = 0.0;
  double bio_factor = 1.0;

  void validate() const;

  double constant_part() const noexcept { return alpha_sw + ctx_switch_clocks / total_clocks; }
  double slope() const noexcept { return bio_factor * loop_clocks_per_pu / total_clocks; }
};

struct MachineModel {
  double perf_per_pu = 100e9;  // flop/s
  double clock_freq = 1e9;     // Hz

  void validate() const;
};

enum class PresetKind { HPL, HPCG, NN };

struct BenchmarkPreset {
  PresetKind kind;
  std::string_view name;
  AlphaDecomposition decomposition;
  MachineModel machine;
};

inline constexpr std::array<PresetKind, 3> kAllPresets{PresetKind::HPL, PresetKind::HPCG,
                                                        PresetKind::NN};

const BenchmarkPreset& preset(PresetKind kind);
// Case-insensitive; throws std::invalid_argument for unknown names.
const BenchmarkPreset& preset(std::string_view name);
std::string_view to_string(PresetKind kind);

double alpha_os(double n_proc, const AlphaDecomposition& d);

// alpha_sw + alpha_os(N). Throws ModelError naming N when the result reaches 1.
double alpha_total(double n_proc, const AlphaDecomposition& d);

// Payload performance of a machine built to nominal r_peak, with
// N = r_peak / perf_per_pu taken as a real number.
model::PerformancePoint rmax_of_rpeak(double r_peak, const MachineModel& m,
                                      const AlphaDecomposition& d);

struct PeakPoint {
  double n_star;           // continuous maximizer
  double r_peak_star;      // flop/s
  double r_max_star;       // flop/s
  double n_star_integer;   // neighbouring integer count with the higher r_max
  double r_max_integer;    // r_max at n_star_integer
  double n_star_analytic;  // sqrt((1 - a) / b)
};

// Golden-section search over log N, relative tolerance 1e-6 in N.
// Throws ModelError when slope() == 0 (monotone saturation, no interior maximum).
PeakPoint peak_point(const MachineModel& m, const AlphaDecomposition& d);

// sqrt((1 - a) / b) with a = constant_part(), b = slope().
double analytic_peak_n(const AlphaDecomposition& d);

}  // namespace perfwall::contrib
