#include "perfwall/contributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "perfwall/errors.hpp"
#include "perfwall/golden.hpp"

namespace perfwall::contrib {

void AlphaDecomposition::validate() const {
  if (!(alpha_sw >= 0.0 && ctx_switch_clocks >= 0.0 && loop_clocks_per_pu >= 0.0))
    throw std::invalid_argument("decomposition constants must be >= 0");
  if (!(total_clocks > 0.0)) throw std::invalid_argument("total_clocks must be > 0");
  if (!(bio_factor >= 1.0)) throw std::invalid_argument("bio_factor must be >= 1");
}

void MachineModel::validate() const {
  if (!(perf_per_pu > 0.0)) throw std::invalid_argument("perf_per_pu must be > 0");
  if (!(clock_freq > 0.0)) throw std::invalid_argument("clock_freq must be > 0");
}

namespace {

constexpr double kContextChangeClocks = 1e4;
constexpr double kTotalClocks = 2e13;

constexpr AlphaDecomposition make_decomposition(double alpha_sw, double bio_factor) {
  AlphaDecomposition d;
  d.alpha_sw = alpha_sw;
  d.ctx_switch_clocks = kContextChangeClocks;
  d.total_clocks = kTotalClocks;
  d.loop_clocks_per_pu = 1.0;
  d.bio_factor = bio_factor;
  return d;
}

const std::array<BenchmarkPreset, 3> kPresets{{
    {PresetKind::HPL, "HPL", make_decomposition(2e-8, 1.0), MachineModel{}},
    {PresetKind::HPCG, "HPCG", make_decomposition(2e-6, 1.0), MachineModel{}},
    {PresetKind::NN, "NN", make_decomposition(2e-6, 5000.0), MachineModel{}},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

// N at which alpha_total reaches 1.
double validity_limit(const AlphaDecomposition& d) {
  return (1.0 - d.constant_part()) / d.slope();
}

}  // namespace

const BenchmarkPreset& preset(PresetKind kind) {
  return kPresets[static_cast<std::size_t>(kind)];
}

const BenchmarkPreset& preset(std::string_view name) {
  for (const auto& p : kPresets)
    if (iequals(p.name, name)) return p;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected HPL, HPCG or NN)");
}

std::string_view to_string(PresetKind kind) { return preset(kind).name; }

double alpha_os(double n_proc, const AlphaDecomposition& d) {
  if (!(n_proc >= 0.0)) throw std::invalid_argument("n_proc must be >= 0");
  return d.ctx_switch_clocks / d.total_clocks +
         d.bio_factor * d.loop_clocks_per_pu * n_proc / d.total_clocks;
}

double alpha_total(double n_proc, const AlphaDecomposition& d) {
  const double total = d.alpha_sw + alpha_os(n_proc, d);
  if (total >= 1.0)
    throw ModelError("(1 - alpha) = " + std::to_string(total) + " >= 1 at N = " +
                     std::to_string(n_proc) + "; the model is not valid there");
  return total;
}

model::PerformancePoint rmax_of_rpeak(double r_peak, const MachineModel& m,
                                      const AlphaDecomposition& d) {
  m.validate();
  if (!(r_peak >= m.perf_per_pu))
    throw std::invalid_argument("r_peak must be at least one PU's performance");
  const double n = r_peak / m.perf_per_pu;
  const double nonparallel = alpha_total(n, d);
  const double r_max = r_peak / (n * nonparallel + (1.0 - nonparallel));
  return {r_peak, r_max, r_max / r_peak};
}

double analytic_peak_n(const AlphaDecomposition& d) {
  if (!(d.slope() > 0.0)) throw ModelError("no interior maximum: (1 - alpha) does not grow with N");
  return std::sqrt((1.0 - d.constant_part()) / d.slope());
}

PeakPoint peak_point(const MachineModel& m, const AlphaDecomposition& d) {
  m.validate();
  d.validate();
  if (!(d.slope() > 0.0)) throw ModelError("no interior maximum: (1 - alpha) does not grow with N");
  if (d.constant_part() >= 1.0) throw ModelError("(1 - alpha) >= 1 already at N = 0");

  const auto r_max_at = [&](double n) {
    return rmax_of_rpeak(n * m.perf_per_pu, m, d).r_max;
  };
  // Search strictly inside the validity range; the payload drops to r_peak/N there.
  const double n_hi = validity_limit(d) * (1.0 - 1e-9);
  if (!(n_hi > 1.0)) throw ModelError("no interior maximum: model invalid for N > 1");

  const double log_hi = std::log(n_hi);
  // Relative tolerance 1e-6 in N is an absolute one in log N.
  const auto best = golden_section_maximize(
      [&](double log_n) { return r_max_at(std::exp(log_n)); }, 0.0, log_hi, 1e-6);

  PeakPoint p{};
  p.n_star = std::exp(best.x);
  if (p.n_star <= 1.0 + 1e-6 || p.n_star >= n_hi * (1.0 - 1e-6))
    throw ModelError("no interior maximum in the valid range of N");
  p.r_peak_star = p.n_star * m.perf_per_pu;
  p.r_max_star = r_max_at(p.n_star);

  const double lo_int = std::max(1.0, std::floor(p.n_star));
  const double hi_int = std::ceil(p.n_star);
  const double r_lo = r_max_at(lo_int);
  const double r_hi = hi_int < n_hi ? r_max_at(hi_int) : r_lo;
  p.n_star_integer = r_hi > r_lo ? hi_int : lo_int;
  p.r_max_integer = std::max(r_lo, r_hi);
  p.n_star_analytic = analytic_peak_n(d);
  return p;
}

}  // namespace perfwall::contrib
