#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = perfwall::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Value printed after "<key>: " on its own line.
double value_of(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + ": ");
  REQUIRE_MESSAGE(pos != std::string::npos, "missing key " << key << " in\n" << text);
  return std::stod(text.substr(pos + key.size() + 2));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("perfwall_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("predict from N, P, alpha") {
  const auto r = run({"predict", "--n", "1", "--p", "100e9", "--alpha", "0.5", "--unit", "G"});
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "r_max") == doctest::Approx(100.0));
  CHECK(r.out.find("Gflop/s") != std::string::npos);
}

TEST_CASE("predict from a preset") {
  const auto r = run({"predict", "--preset", "HPL", "--rpeak", "0.00587E"});
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "r_max") == doctest::Approx(0.0058619362556244384).epsilon(1e-12));
  CHECK(r.err.empty());
}

TEST_CASE("predict past the NN peak warns and reports the peak") {
  const auto r = run({"predict", "--preset", "NN", "--rpeak", "1E"});
  CHECK(r.code == 0);
  CHECK(r.err.find("past the performance peak") != std::string::npos);
  CHECK(r.err.find("peak: N*") != std::string::npos);
}

TEST_CASE("predict outside the model's validity is a data error") {
  const auto r = run({"predict", "--preset", "NN", "--rpeak", "1E", "--override", "bio_factor=1e8"});
  CHECK(r.code == 2);
  CHECK(r.err.find(">= 1") != std::string::npos);
}

TEST_CASE("predict usage errors") {
  CHECK(run({"predict", "--n", "10", "--p", "1G"}).code == 1);
  CHECK(run({"predict", "--n", "10", "--p", "1G", "--alpha", "0.5", "--nonparallel", "0.5"}).code == 1);
  CHECK(run({"predict", "--preset", "HPL", "--rpeak", "1E", "--override", "warp=9"}).code == 1);
  CHECK(run({"predict", "--preset", "XYZ", "--rpeak", "1E"}).code == 1);
  CHECK(run({"predict", "--n", "10", "--p", "1Q", "--alpha", "0.5"}).code == 1);
  CHECK(run({"predict", "--n", "10", "--p", "1G", "--alpha", "0.5", "--unit", "Z"}).code == 1);
}

TEST_CASE("invert Taihulight") {
  const auto hpl = run({"invert", "--n", "10649600", "--rpeak", "0.1254E", "--rmax", "0.0930E"});
  CHECK(hpl.code == 0);
  CHECK(value_of(hpl.out, "nonparallel (1-alpha_eff)") == doctest::Approx(3.3e-8).epsilon(0.05));
  const auto hpcg = run({"invert", "--n", "10649600", "--rpeak", "0.1254E", "--rmax", "0.000480E"});
  CHECK(value_of(hpcg.out, "nonparallel (1-alpha_eff)") == doctest::Approx(2.4e-5).epsilon(0.05));
  CHECK(run({"invert", "--n", "1", "--rpeak", "1E", "--rmax", "0.5E"}).code == 1);
  CHECK(run({"invert", "--n", "10", "--rpeak", "1E", "--rmax", "2E"}).code == 2);
}

TEST_CASE("sweep maximum matches the peak finder") {
  const auto r = run({"sweep", "--preset", "HPCG"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "series,x,y");
  double best_x = 0, best_y = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double x = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const double y = std::stod(line.substr(c2 + 1));
    if (y > best_y) best_y = y, best_x = x;
  }
  // mpmath: HPCG peak at R_Peak 0.44721314817 Ef with R_Max 0.040854461282 Ef
  CHECK(best_x == doctest::Approx(0.44721314817).epsilon(0.01));
  CHECK(best_y == doctest::Approx(0.040854461282).epsilon(0.01));
  CHECK(r.err.find("peak: N*") != std::string::npos);
}

TEST_CASE("surface grid has E = 1 at N = 1") {
  const auto r = run({"surface", "--nmax", "1e8", "--samples", "8"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  int ones = 0;
  while (std::getline(in, line))
    if (line.find(",1,1") != std::string::npos) ++ones;
  CHECK(ones == 8);
}

TEST_CASE("timeline prints Summit ratios") {
  const auto r = run({"timeline", "--machine", "Summit"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Summit,2018.5,143.5,1.1733") != std::string::npos);
  CHECK(r.out.find("Summit,2019,148.6,1.0355") != std::string::npos);
  CHECK(run({"timeline", "--machine", "Aurora"}).code == 2);
  CHECK(run({"timeline", "--data", "/nonexistent.csv"}).code == 2);
}

TEST_CASE("relativistic") {
  const auto r = run({"relativistic", "--t", "86400", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "relativistic speed") == doctest::Approx(847600).epsilon(1e-4));
  CHECK(run({"relativistic"}).code == 1);
  CHECK(run({"relativistic", "--t", "1", "--n", "0.5"}).code == 1);
}

TEST_CASE("figure writes files") {
  const auto dir = scratch("fig6a");
  const auto r = run({"figure", "6A", "-o", dir.string(), "--format", "svg"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "fig6A.csv"));
  CHECK(fs::exists(dir / "fig6A.svg"));

  const auto csv_only = scratch("fig5");
  CHECK(run({"figure", "5", "-o", csv_only.string()}).code == 0);
  CHECK(fs::exists(csv_only / "fig5.csv"));
  CHECK_FALSE(fs::exists(csv_only / "fig5.svg"));

  const auto fig3 = scratch("fig3");
  CHECK(run({"figure", "3", "--data", std::string(PERFWALL_DATA_DIR) + "/fig3_timeline.csv", "-o",
             fig3.string()})
            .code == 0);
  const auto text = slurp(fig3 / "fig3.csv");
  CHECK(text.find("ratio:Summit,2018.5,1.173344235486508") != std::string::npos);
  CHECK(text.find("ratio:Summit,2019,1.035540069686411") != std::string::npos);
  fs::remove_all(dir);
  fs::remove_all(csv_only);
  fs::remove_all(fig3);
}

TEST_CASE("figure with an unknown id lists the valid ones") {
  const auto r = run({"figure", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("1, 3, 4, 5, 6A, 6B, 6C") != std::string::npos);
}

TEST_CASE("help mentions units and exits 0") {
  for (const char* sub : {"predict", "invert", "sweep", "surface", "timeline", "relativistic", "figure"}) {
    const auto r = run({sub, "--help"});
    CHECK(r.code == 0);
    const bool has_unit = r.out.find("flop/s") != std::string::npos ||
                          r.out.find("seconds") != std::string::npos ||
                          r.out.find("fractional year") != std::string::npos;
    CHECK_MESSAGE(has_unit, sub);
  }
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
}
