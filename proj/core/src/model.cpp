#include "perfwall/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "perfwall/errors.hpp"

namespace perfwall::model {

ParallelFraction ParallelFraction::from_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1], got " + std::to_string(alpha));
  return ParallelFraction(1.0 - alpha);
}

ParallelFraction ParallelFraction::from_nonparallel(double nonparallel) {
  if (!(nonparallel >= 0.0 && nonparallel <= 1.0))
    throw std::invalid_argument("(1 - alpha) must lie in [0, 1], got " + std::to_string(nonparallel));
  return ParallelFraction(nonparallel);
}

void ParallelSystem::validate() const {
  if (!(n_proc >= 1.0)) throw std::invalid_argument("n_proc must be >= 1");
  if (!(perf_single > 0.0) || !std::isfinite(perf_single))
    throw std::invalid_argument("perf_single must be > 0");
}

void RelativisticParams::validate() const {
  if (!(accel > 0.0)) throw std::invalid_argument("acceleration must be > 0");
  if (!(light_speed > 0.0)) throw std::invalid_argument("light speed must be > 0");
  if (!(density >= 1.0)) throw std::invalid_argument("optical density must be >= 1");
}

namespace {

double denominator(double n_proc, ParallelFraction fraction) {
  return n_proc * fraction.nonparallel() + fraction.alpha();
}

}  // namespace

double classic_total_perf(const ParallelSystem& sys) {
  sys.validate();
  return sys.n_proc * sys.perf_single;
}

double modern_total_perf(const ParallelSystem& sys) {
  sys.validate();
  return sys.n_proc * sys.perf_single / denominator(sys.n_proc, sys.fraction);
}

double efficiency(double n_proc, ParallelFraction fraction) {
  if (!(n_proc >= 1.0)) throw std::invalid_argument("n_proc must be >= 1");
  return 1.0 / denominator(n_proc, fraction);
}

ParallelFraction alpha_from_measurement(double n_proc, double measured_efficiency) {
  if (!(n_proc >= 2.0))
    throw std::invalid_argument("inversion needs at least 2 processing units");
  if (!(measured_efficiency > 0.0 && measured_efficiency <= 1.0))
    throw std::invalid_argument("efficiency must lie in (0, 1], got " +
                                std::to_string(measured_efficiency));
  const double nonparallel = (1.0 / measured_efficiency - 1.0) / (n_proc - 1.0);
  return ParallelFraction::from_nonparallel(nonparallel);
}

double saturation_limit(double perf_single, double nonparallel) {
  if (!(perf_single > 0.0)) throw std::invalid_argument("perf_single must be > 0");
  if (nonparallel == 0.0) throw ModelError("(1 - alpha) = 0: performance does not saturate");
  if (!(nonparallel > 0.0 && nonparallel <= 1.0))
    throw std::invalid_argument("(1 - alpha) must lie in (0, 1]");
  return perf_single / nonparallel;
}

double classic_speed(double t, double accel) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
  return t * accel;
}

double relativistic_speed(double t, const RelativisticParams& params) {
  params.validate();
  const double v = classic_speed(t, params.accel);
  const double ratio = v / params.limit();
  return v / std::hypot(1.0, ratio);
}

}  // namespace perfwall::model
