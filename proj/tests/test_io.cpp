#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "recoil/errors.hpp"
#include "recoil/io.hpp"
#include "test_support.hpp"

using namespace recoil;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "recoil_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("doubles round-trip through text") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, 40.0 * u(rng));
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(100.0) == "100");
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("density csv re-parses bit-exactly") {
  const ModelParams p = test_support::unit_params(0.01, 10.0);
  const SpatialGrid g = SpatialGrid::symmetric(1.0 * p.lambda, 0.05 * p.lambda);
  const DensityGrid dg = reduced_density(g, 3.0 / p.gamma, Scenario::single(0.1, 0.5 * p.lambda), true, p);
  const fs::path path = scratch("rho.csv");
  io::write_atomic(path, io::density_csv(dg));
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  const io::CsvTable t = io::read_csv(path);
  CHECK(t.header == io::density_header);
  REQUIRE(t.rows.size() == g.n * g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) {
      const auto& r = t.rows[i * g.n + j];
      REQUIRE(r.size() == 5);
      CHECK(r[0] == g.x(i));
      CHECK(r[1] == g.x(j));
      CHECK(r[2] == dg(i, j).real());
      CHECK(r[3] == dg(i, j).imag());
      CHECK(r[4] == std::abs(dg(i, j)));
    }
  }
}

TEST_CASE("factor and trajectory csv layout") {
  const std::vector<double> dx{0.0, 0.5}, f{1.0, 0.25};
  CHECK(io::factor_csv(dx, f) == "dx_over_lambda,F\n0,1\n0.5,0.25\n");

  Trajectory tr;
  AmplitudeState s;
  s.t = 2.0;
  s.a_val = {0.5, -0.25};
  tr.samples.push_back(s);
  tr.populations.push_back({0.3125, 0.5, 0.1875});
  CHECK(io::trajectory_csv(tr) == "t,re_a,im_a,norm,pop_a,pop_b,pop_d\n2,0.5,-0.25,1,0.3125,0.5,0.1875\n");
}

TEST_CASE("csv parser rejects malformed input") {
  CHECK_THROWS_AS(io::parse_csv("no newline"), IoError);
  CHECK_THROWS_AS(io::parse_csv("a,b\n1,x\n"), IoError);
  CHECK_THROWS_AS(io::parse_csv("a,b\n1;2\n"), IoError);
  CHECK(io::parse_csv("a\n1\n\n2\n").rows.size() == 2);
  CHECK_THROWS_AS(io::read_csv(scratch("missing.csv")), IoError);
}

TEST_CASE("unwritable destinations raise IoError") {
  CHECK_THROWS_AS(io::write_atomic("/nonexistent_dir_for_tests/x.csv", "x"), IoError);
  const fs::path dir = scratch("as_dir");
  fs::create_directories(dir);
  CHECK_THROWS_AS(io::write_atomic(dir, "x"), IoError);
}
