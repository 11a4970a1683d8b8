#pragma once

// Closed-form performance algebra: classic (linear) and saturating ("modern")
// performance addition, its inversion from measured efficiency, and the
// accelerated-body speed analogue.

namespace perfwall::model {

// Parallel fraction alpha, stored as the nonparallel fraction (1 - alpha).
// Values of (1 - alpha) near 1e-8 would lose most of their digits if alpha
// itself were stored, so construction always names which side is given.
class ParallelFraction {
 public:
  static ParallelFraction from_alpha(double alpha);
  static ParallelFraction from_nonparallel(double nonparallel);

  double alpha() const noexcept { return 1.0 - nonparallel_; }
  double nonparallel() const noexcept { return nonparallel_; }

  friend bool operator==(const ParallelFraction&, const ParallelFraction&) = default;

 private:
  explicit ParallelFraction(double nonparallel) : nonparallel_(nonparallel) {}
  double nonparallel_;
};

struct ParallelSystem {
  double n_proc;       // processing units, >= 1 (continuous values allowed)
  double perf_single;  // flop/s per PU, > 0
  ParallelFraction fraction;

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

struct RelativisticParams {
  double accel;                      // m/s^2
  double light_speed = 299792458.0;  // m/s
  double density = 1.0;              // optical density n >= 1

  void validate() const;
  double limit() const noexcept { return light_speed / density; }
};

struct PerformancePoint {
  double r_peak;      // flop/s
  double r_max;       // flop/s
  double efficiency;  // r_max / r_peak
};

double classic_total_perf(const ParallelSystem& sys);

// N * P / (N * (1 - alpha) + alpha).
double modern_total_perf(const ParallelSystem& sys);

// 1 / (N * (1 - alpha) + alpha); the ratio modern / classic.
double efficiency(double n_proc, ParallelFraction fraction);

// Inverts efficiency(): (1 - alpha) = (1/E - 1) / (N - 1).
// Requires N >= 2 and 0 < E <= 1 (std::invalid_argument otherwise).
ParallelFraction alpha_from_measurement(double n_proc, double measured_efficiency);

// N -> infinity limit of modern_total_perf at fixed (1 - alpha): P / (1 - alpha).
// Throws ModelError when (1 - alpha) == 0 since the performance is then unbounded.
double saturation_limit(double perf_single, double nonparallel);

double classic_speed(double t, double accel);

// t*a / sqrt(1 + (t*a / (c/n))^2); approaches c/n from below.
double relativistic_speed(double t, const RelativisticParams& params);

}  // namespace perfwall::model
