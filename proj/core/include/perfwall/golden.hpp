#pragma once

#include <cmath>
#include <stdexcept>

namespace perfwall {

struct GoldenResult {
  double x;
  double value;
  int iterations;
};

// Maximizes a unimodal f on [lo, hi] by golden-section search. Stops once the
// bracket is narrower than abs_tol.
template <typename F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double abs_tol,
                                     int max_iterations = 500) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_maximize: empty bracket");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("golden_section_maximize: tolerance must be > 0");

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while ((b - a) > abs_tol && it < max_iterations) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

}  // namespace perfwall
