#pragma once

// Randomised invariants shared by the unit property tests and the acceptance
// suite. Generators are seeded, so every run checks the same cases.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "perfwall/contributions.hpp"
#include "perfwall/ingest.hpp"
#include "perfwall/model.hpp"

namespace perfwall::props {

struct Outcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

inline void record(Outcome& o, bool pass, const std::function<std::string()>& describe) {
  ++o.cases;
  if (pass) return;
  if (o.failures++ == 0) o.first_failure = describe();
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

inline Outcome inversion_round_trip(std::size_t n_cases, std::uint64_t seed = 1) {
  Gen g(seed);
  Outcome o;
  for (std::size_t i = 0; i < n_cases; ++i) {
    const double n = std::round(g.log_uniform(2.0, 1e8));
    // Efficiency cannot drop below 1/N while (1 - alpha) stays within [0, 1].
    const double e = g.log_uniform(std::max(1e-4, 1.0 / n), 1.0);
    const auto fraction = model::alpha_from_measurement(n, e);
    const double back = model::efficiency(n, fraction);
    record(o, rel_diff(back, e) <= 1e-12, [&] {
      std::ostringstream s;
      s.precision(17);
      s << "N=" << n << " E=" << e << " -> " << back;
      return s.str();
    });
  }
  return o;
}

inline Outcome modern_is_classic_times_efficiency(std::size_t n_cases, std::uint64_t seed = 2) {
  Gen g(seed);
  Outcome o;
  for (std::size_t i = 0; i < n_cases; ++i) {
    const double n = g.log_uniform(1.0, 1e8);
    const double p = g.log_uniform(1e6, 1e12);
    const auto f = model::ParallelFraction::from_nonparallel(g.log_uniform(1e-10, 1.0));
    const model::ParallelSystem sys{n, p, f};
    const double lhs = model::modern_total_perf(sys);
    const double rhs = model::classic_total_perf(sys) * model::efficiency(n, f);
    record(o, rel_diff(lhs, rhs) <= 1e-12, [&] { return "N=" + std::to_string(n); });
  }
  return o;
}

inline Outcome monotone_saturation(std::size_t n_cases, std::uint64_t seed = 3) {
  Gen g(seed);
  Outcome o;
  for (std::size_t i = 0; i < n_cases; ++i) {
    const double s = g.log_uniform(1e-10, 1.0);
    const double p = g.log_uniform(1e6, 1e12);
    double n1 = g.log_uniform(1.0, 1e12), n2 = g.log_uniform(1.0, 1e12);
    if (n1 > n2) std::swap(n1, n2);
    const auto f = model::ParallelFraction::from_nonparallel(s);
    const double r1 = model::modern_total_perf({n1, p, f});
    const double r2 = model::modern_total_perf({n2, p, f});
    const double limit = model::saturation_limit(p, s);
    record(o, r1 <= r2 * (1 + 1e-15) && r2 <= limit * (1 + 1e-15),
           [&] { return "s=" + std::to_string(s) + " N1=" + std::to_string(n1); });
  }
  return o;
}

inline Outcome relativistic_bounds(std::size_t n_cases, std::uint64_t seed = 4) {
  Gen g(seed);
  Outcome o;
  for (std::size_t i = 0; i < n_cases; ++i) {
    model::RelativisticParams params;
    params.accel = g.uniform(0.1, 100.0);
    params.density = g.uniform(1.0, 10.0);
    const double t = g.log_uniform(1e-3, 1e10);
    const double v = model::relativistic_speed(t, params);
    const double classic = model::classic_speed(t, params.accel);
    bool pass = v < params.limit() && v <= classic && v > 0.0;
    // Low speeds: no noticeable difference.
    if (classic <= 1e-3 * params.limit()) pass = pass && rel_diff(v, classic) <= 1e-6;
    record(o, pass, [&] { return "t=" + std::to_string(t) + " v=" + std::to_string(v); });
  }
  return o;
}

inline contrib::AlphaDecomposition random_decomposition(Gen& g) {
  contrib::AlphaDecomposition d;
  d.alpha_sw = g.log_uniform(1e-10, 1e-4);
  d.ctx_switch_clocks = g.uniform(0.0, 1e5);
  d.total_clocks = g.log_uniform(1e11, 1e15);
  d.loop_clocks_per_pu = g.log_uniform(0.1, 10.0);
  d.bio_factor = g.log_uniform(1.0, 1e4);
  return d;
}

// r_max rises before the peak and falls after it; the golden-section result matches
// sqrt((1 - a) / b) within 1%.
inline Outcome contribution_unimodal(std::size_t n_cases, std::uint64_t seed = 5) {
  Gen g(seed);
  Outcome o;
  while (o.cases < n_cases) {
    const auto d = random_decomposition(g);
    const contrib::MachineModel m{g.log_uniform(1e9, 1e12), 1e9};
    const double analytic = contrib::analytic_peak_n(d);
    const double n_valid = (1.0 - d.constant_part()) / d.slope();
    if (analytic < 4.0 || 2.0 * analytic >= n_valid) continue;
    const auto peak = contrib::peak_point(m, d);
    const auto r = [&](double n) { return contrib::rmax_of_rpeak(n * m.perf_per_pu, m, d).r_max; };
    const bool pass = r(peak.n_star / 2) < peak.r_max_star && r(2 * peak.n_star) < peak.r_max_star &&
                      r(peak.n_star / 4) < r(peak.n_star / 2) &&
                      rel_diff(peak.n_star, analytic) <= 0.01;
    record(o, pass, [&] { return "N*=" + std::to_string(peak.n_star) + " analytic=" + std::to_string(analytic); });
  }
  return o;
}

inline Outcome preset_ordering(std::size_t n_cases, std::uint64_t seed = 6) {
  Gen g(seed);
  Outcome o;
  const auto& hpl = contrib::preset(contrib::PresetKind::HPL);
  const auto& hpcg = contrib::preset(contrib::PresetKind::HPCG);
  const auto& nn = contrib::preset(contrib::PresetKind::NN);
  for (std::size_t i = 0; i < n_cases; ++i) {
    const double r_peak = g.log_uniform(100e9, 1.1e18);
    const double a = contrib::rmax_of_rpeak(r_peak, hpl.machine, hpl.decomposition).r_max;
    const double b = contrib::rmax_of_rpeak(r_peak, hpcg.machine, hpcg.decomposition).r_max;
    const double c = contrib::rmax_of_rpeak(r_peak, nn.machine, nn.decomposition).r_max;
    record(o, a >= b && b >= c, [&] { return "r_peak=" + std::to_string(r_peak); });
  }
  return o;
}

// Differences of alpha_total are slope * dN up to rounding of the operands.
inline Outcome alpha_total_affine(std::size_t n_cases, std::uint64_t seed = 7) {
  Gen g(seed);
  Outcome o;
  while (o.cases < n_cases) {
    const auto d = random_decomposition(g);
    const double n_valid = (1.0 - d.constant_part()) / d.slope();
    const double n1 = g.uniform(1.0, 0.9 * n_valid), n2 = g.uniform(1.0, 0.9 * n_valid);
    const double diff = contrib::alpha_total(n2, d) - contrib::alpha_total(n1, d);
    const double expect = d.slope() * (n2 - n1);
    const double scale = std::max(contrib::alpha_total(n1, d), contrib::alpha_total(n2, d));
    record(o, std::abs(diff - expect) <= 8 * 2.220446049250313e-16 * scale,
           [&] { return "n1=" + std::to_string(n1) + " n2=" + std::to_string(n2); });
  }
  return o;
}

inline std::vector<ingest::MachineRecord> random_records(Gen& g, std::size_t count) {
  std::vector<ingest::MachineRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    ingest::MachineRecord r;
    r.machine = "M" + std::to_string(g.integer(0, 50)) + (g.integer(0, 1) ? " x" : "");
    r.date = 1990.0 + 0.5 * static_cast<double>(g.integer(0, 200));
    r.benchmark = g.integer(0, 1) ? ingest::BenchmarkKind::HPL : ingest::BenchmarkKind::HPCG;
    r.r_max = g.log_uniform(1e9, 1e18);
    if (g.integer(0, 3)) r.r_peak = r.r_max * g.uniform(1.0, 100.0);
    if (g.integer(0, 3)) r.cores = g.integer(1, 20000000);
    out.push_back(r);
  }
  return out;
}

inline Outcome csv_round_trip(std::size_t n_cases, std::uint64_t seed = 8) {
  Gen g(seed);
  Outcome o;
  for (std::size_t i = 0; i < n_cases; ++i) {
    const auto recs = random_records(g, g.integer(0, 6));
    std::stringstream io;
    ingest::write_records(io, recs);
    const auto back = ingest::parse_records(io);
    const auto derived = ingest::derive(back.records);
    bool pass = back.records == recs && back.warnings.empty() && derived.size() == recs.size();
    for (const auto& d : derived)
      if (d.efficiency) pass = pass && *d.efficiency > 0.0 && *d.efficiency <= 1.0;
    record(o, pass, [&] { return "case " + std::to_string(i); });
  }
  return o;
}

}  // namespace perfwall::props
