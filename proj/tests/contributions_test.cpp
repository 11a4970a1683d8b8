#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "perfwall/contributions.hpp"
#include "perfwall/errors.hpp"

using namespace perfwall::contrib;

namespace {

perfwall::oracle::Decomposition to_oracle(const AlphaDecomposition& d) {
  return {d.alpha_sw, d.ctx_switch_clocks, d.total_clocks, d.loop_clocks_per_pu, d.bio_factor};
}

}  // namespace

TEST_CASE("preset constants") {
  const auto& hpl = preset(PresetKind::HPL).decomposition;
  const auto& hpcg = preset("hpcg").decomposition;
  const auto& nn = preset("NN").decomposition;
  CHECK(hpl.alpha_sw == 2e-8);
  CHECK(hpcg.alpha_sw == 2e-6);
  CHECK(nn.alpha_sw == 2e-6);
  CHECK(nn.bio_factor == 5000.0);
  CHECK(hpl.bio_factor == 1.0);
  CHECK(hpcg.ctx_switch_clocks == 1e4);
  for (auto kind : kAllPresets) {
    const auto& p = preset(kind);
    CHECK(p.decomposition.total_clocks == 2e13);
    CHECK(p.decomposition.loop_clocks_per_pu == 1.0);
    CHECK(p.machine.perf_per_pu == 100e9);
    CHECK(p.machine.clock_freq == 1e9);
  }
  CHECK_THROWS_AS(preset("LINPACK"), std::invalid_argument);
}

TEST_CASE("alpha_os") {
  const auto& hpl = preset(PresetKind::HPL).decomposition;
  CHECK(alpha_os(0, hpl) == doctest::Approx(5e-10).epsilon(1e-14));
  CHECK(alpha_os(1e6, hpl) == doctest::Approx(5.05e-8).epsilon(1e-14));
  // mpmath: 2.500005e-4
  CHECK(alpha_os(1e6, preset(PresetKind::NN).decomposition) == doctest::Approx(2.500005e-4).epsilon(1e-14));
}

TEST_CASE("alpha_total") {
  CHECK(alpha_total(0, preset(PresetKind::HPL).decomposition) == doctest::Approx(2.05e-8).epsilon(1e-14));
  CHECK(alpha_total(0, preset(PresetKind::HPCG).decomposition) ==
        doctest::Approx(2.0005e-6).epsilon(1e-14));
  // 2e-6 + 5e-10 + 5000 * 58700 / 2e13 (mpmath: 1.66755e-5)
  CHECK(alpha_total(58700, preset(PresetKind::NN).decomposition) ==
        doctest::Approx(1.66755e-5).epsilon(1e-13));

  SUBCASE("validity guard reports N") {
    const auto& nn = preset(PresetKind::NN).decomposition;
    try {
      alpha_total(5e9, nn);
      FAIL("expected ModelError");
    } catch (const perfwall::ModelError& e) {
      CHECK(std::string(e.what()).find("N = 5000000000") != std::string::npos);
    }
  }
}

TEST_CASE("rmax_of_rpeak") {
  const MachineModel m;
  SUBCASE("HPL near the measured dot") {
    const auto p = rmax_of_rpeak(0.00587e18, m, preset(PresetKind::HPL).decomposition);
    // mpmath: 0.0058619362556244384 Ef
    CHECK(p.r_max / 1e18 == doctest::Approx(0.0058619362556244384).epsilon(1e-13));
    CHECK(p.r_peak == 0.00587e18);
    CHECK(p.efficiency == doctest::Approx(p.r_max / p.r_peak));
  }
  SUBCASE("HPCG model line sits far above its measured dot") {
    const auto p = rmax_of_rpeak(0.00587e18, m, preset(PresetKind::HPCG).decomposition);
    // mpmath: 0.0052523281476088808 Ef; the measured dot is 0.000095 Ef.
    CHECK(p.r_max / 1e18 == doctest::Approx(0.0052523281476088808).epsilon(1e-13));
    CHECK(p.r_max / 1e18 > 50 * 0.000095);
  }
  SUBCASE("NN close to its maximum") {
    const auto p = rmax_of_rpeak(0.00632e18, m, preset(PresetKind::NN).decomposition);
    // mpmath: 0.0029741543173318547 Ef
    CHECK(p.r_max / 1e18 == doctest::Approx(0.0029741543173318547).epsilon(1e-13));
  }
  SUBCASE("long double oracle over the figure range") {
    for (auto kind : kAllPresets) {
      const auto& d = preset(kind).decomposition;
      for (double x : {0.001, 0.01, 0.1, 0.5, 1.1}) {
        const double expect =
            static_cast<double>(perfwall::oracle::rmax(x * 1e18, 100e9, to_oracle(d)));
        CHECK(rmax_of_rpeak(x * 1e18, m, d).r_max == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(rmax_of_rpeak(1e9, m, preset(PresetKind::HPL).decomposition), std::invalid_argument);
}

TEST_CASE("peak_point") {
  const MachineModel m;
  SUBCASE("HPL") {
    const auto p = peak_point(m, preset(PresetKind::HPL).decomposition);
    // mpmath: N* = 4472135.9091601856, R_Peak* = 0.44721359 Ef
    CHECK(p.n_star == doctest::Approx(4472135.9091601856).epsilon(1e-6));
    CHECK(p.r_peak_star / 1e18 == doctest::Approx(0.447).epsilon(0.01));
    CHECK(p.r_max_star / 1e18 == doctest::Approx(0.21380608268075724).epsilon(1e-9));
    CHECK(p.n_star_analytic == doctest::Approx(4472135.9091601856).epsilon(1e-14));
  }
  SUBCASE("NN") {
    const auto p = peak_point(m, preset(PresetKind::NN).decomposition);
    CHECK(p.n_star == doctest::Approx(63245.489941971356).epsilon(1e-6));
    CHECK(p.r_peak_star / 1e18 == doctest::Approx(0.0063).epsilon(0.01));
  }
  SUBCASE("integer neighbour has the higher r_max") {
    const auto& d = preset(PresetKind::NN).decomposition;
    const auto p = peak_point(m, d);
    CHECK(std::abs(p.n_star_integer - p.n_star) < 1.0);
    CHECK(p.n_star_integer == std::round(p.n_star_integer));
    const double other = p.n_star_integer == std::floor(p.n_star) ? std::ceil(p.n_star) : std::floor(p.n_star);
    CHECK(p.r_max_integer >= rmax_of_rpeak(other * m.perf_per_pu, m, d).r_max);
  }
  SUBCASE("scan oracle") {
    for (auto kind : kAllPresets) {
      const auto& d = preset(kind).decomposition;
      const double limit = (1.0 - d.constant_part()) / d.slope();
      const double scan =
          static_cast<double>(perfwall::oracle::argmax_n_by_scan(100e9, to_oracle(d), limit * 0.999));
      CHECK(peak_point(m, d).n_star == doctest::Approx(scan).epsilon(1e-5));
    }
  }
  SUBCASE("no interior maximum without looping cost") {
    auto d = preset(PresetKind::HPL).decomposition;
    d.loop_clocks_per_pu = 0.0;
    CHECK_THROWS_WITH_AS(peak_point(m, d), doctest::Contains("no interior maximum"), perfwall::ModelError);
  }
}

TEST_CASE("degenerate decomposition reduces to the constant-alpha model") {
  AlphaDecomposition d;
  d.alpha_sw = 3.3e-8;
  d.ctx_switch_clocks = 0.0;
  d.loop_clocks_per_pu = 0.0;
  d.bio_factor = 1.0;
  d.total_clocks = 2e13;
  const MachineModel m{11.78e9, 1e9};
  for (double r_peak : {11.78e9, 1e15, 0.1254e18}) {
    const auto p = rmax_of_rpeak(r_peak, m, d);
    const perfwall::model::ParallelSystem sys{
        r_peak / m.perf_per_pu, m.perf_per_pu, perfwall::model::ParallelFraction::from_nonparallel(3.3e-8)};
    CHECK(p.r_max == doctest::Approx(perfwall::model::modern_total_perf(sys)).epsilon(1e-15));
  }
}

TEST_CASE("validation") {
  AlphaDecomposition d;
  d.total_clocks = 0.0;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d.total_clocks = 1.0;
  d.bio_factor = 0.5;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  CHECK_THROWS_AS((MachineModel{0.0, 1e9}.validate()), std::invalid_argument);
}
