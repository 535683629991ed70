#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "recoil/core.hpp"
#include "recoil/errors.hpp"
#include "test_support.hpp"

using namespace recoil;

namespace {
ModelParams natural() { return test_support::unit_params(0.01, 1.0); }
}  // namespace

TEST_CASE("decay rate from the dipole factor") {
  CHECK(decay_rate(1.0, 0.0) == 0.0);
  CHECK(decay_rate(2.0, 0.3) == doctest::Approx(4.0 * decay_rate(1.0, 0.3)).epsilon(1e-15));
  // d^2 / 4 = 1e-6
  CHECK(decay_rate(1.0, std::sqrt(4e-6)) == doctest::Approx(1e-6).epsilon(1e-14));
  CHECK_THROWS_AS(decay_rate(std::nan(""), 1.0), DomainError);
}

TEST_CASE("make_params validates and derives") {
  ParamInputs in;
  in.mu = 3.0;
  CHECK_THROWS_AS(make_params(in), ConfigError);  // neither gamma nor dipole
  in.dipole = 0.02;
  const ModelParams p = make_params(in);
  CHECK(p.gamma == doctest::Approx(1e-4));
  CHECK(p.cap_m == 12.0);
  CHECK(p.lambda * p.omega0 == doctest::Approx(2.0 * pi).epsilon(1e-15));
  in.dipole.reset();
  in.gamma = -1.0;
  CHECK_THROWS_AS(make_params(in), ConfigError);
  in.gamma = 0.01;
  in.mu = 0.0;
  CHECK_THROWS_AS(make_params(in), ConfigError);
  in.mu = 1.0;
  in.omega0 = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(make_params(in), ConfigError);
}

TEST_CASE("natural units round trip bit-exactly") {
  const ModelParams p = test_support::unit_params(0.01, 7.25);
  const ModelParams q = test_support::unit_params(0.01, 7.25);
  CHECK(p.cap_m == 4.0 * p.mu);
  CHECK(p.lambda == q.lambda);
  CHECK(p.lambda == 2.0 * pi / p.omega0);
}

TEST_CASE("scenario regime gate") {
  CHECK_NOTHROW(require_scenario_regime(test_support::unit_params(0.1)));
  CHECK_THROWS_AS(require_scenario_regime(test_support::unit_params(0.2)), ConfigError);
}

TEST_CASE("coupling scales as sqrt(k) and reproduces gamma at resonance") {
  const ModelParams p = natural();
  CHECK(coupling_g(4.0, p) / coupling_g(1.0, p) == doctest::Approx(2.0).epsilon(1e-15));
  const double g0 = coupling_g(p.k0(), p);
  CHECK(2.0 * pi * g0 * g0 == doctest::Approx(p.gamma).epsilon(1e-14));
  CHECK_THROWS_AS(coupling_g(0.0, p), DomainError);
  CHECK_THROWS_AS(coupling_g(-1.0, p), DomainError);
  CHECK(ModeGrid::uniform(p, 10, 0.5).coupling_ref == g0);
}

TEST_CASE("frequency examples") {
  const ModelParams p = natural();
  CHECK(omega_a({0.0, 0.0}, p) == 1.0);
  CHECK(omega_a({1.0, 0.0}, p) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(omega_a({-0.7, 0.3}, p) == omega_a({0.7, 0.3}, p));

  CHECK(omega_b(1.0, pi / 2, {0.0, 0.0}, p) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(omega_b(1.3, 0.0, {0.4, 0.2}, p) ==
        doctest::Approx(0.2 * 0.2 / 8.0 + 0.4 * 0.4 / 2.0 + 1.3).epsilon(1e-15));
  CHECK(omega_b(1.1, 0.4, {0.3, -0.2}, p) ==
        doctest::Approx(omega_b(1.1, pi - 0.4, {0.3, -0.2}, p)).epsilon(1e-15));

  CHECK(omega_d(1.0, pi / 2, 1.0, -pi / 2, {0.0, 0.0}, p) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(omega_d(1.2, 0.0, 0.9, 0.0, {0.0, 0.0}, p) == doctest::Approx(1.1).epsilon(1e-15));
  // Swapping the photons together with p -> -p leaves omega_D unchanged at P = 0.
  CHECK(omega_d(1.2, 0.3, 0.9, -1.1, {0.25, 0.0}, p) ==
        doctest::Approx(omega_d(0.9, -1.1, 1.2, 0.3, {-0.25, 0.0}, p)).epsilon(1e-15));
}

TEST_CASE("omega_B recoil polynomial at random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const ModelParams p = test_support::unit_params(0.01, 0.5 + std::abs(u(rng)));
    const double phi = pi * u(rng);
    const Momentum m{u(rng), u(rng)};
    const double k = p.k0();
    const double q = k * std::sin(phi);
    const double recoil = -m.total * q / p.cap_m + q * q / (2.0 * p.cap_m) -
                          m.relative * q / (2.0 * p.mu) + q * q / (8.0 * p.mu);
    const double lhs = omega_b(k, phi, m, p) - p.omega0 * (k / p.k0()) -
                       m.total * m.total / (2.0 * p.cap_m) -
                       m.relative * m.relative / (2.0 * p.mu);
    CHECK(lhs == doctest::Approx(recoil).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("mode grid layout and weights") {
  const ModelParams p = natural();
  const ModeGrid g = ModeGrid::uniform(p, 40, 50.0 * p.gamma, {0.0, pi / 3});
  CHECK(g.size() == 80);
  for (std::size_t i = 1; i < g.k_values.size(); ++i) CHECK(g.k_values[i] > g.k_values[i - 1]);
  CHECK(g.k_min() == doctest::Approx(p.k0() - 25.0 * p.gamma).epsilon(1e-14));
  CHECK(g.k_max() == doctest::Approx(p.k0() + 25.0 * p.gamma).epsilon(1e-14));
  CHECK(g.recurrence_time() == doctest::Approx(2.0 * pi / (50.0 * p.gamma / 40.0)));
  // Midpoint weights integrate 1 and k exactly.
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < g.k_values.size(); ++i) {
    s0 += g.k_weights[i];
    s1 += g.k_weights[i] * g.k_values[i];
  }
  const double a = g.k_min(), b = g.k_max();
  CHECK(s0 == doctest::Approx(b - a).epsilon(1e-12));
  CHECK(s1 == doctest::Approx((b * b - a * a) / 2.0).epsilon(1e-12));
  double wphi = 0.0;
  for (double w : g.phi_weights) wphi += w;
  CHECK(wphi == doctest::Approx(1.0).epsilon(1e-15));

  const auto modes = g.modes(p);
  REQUIRE(modes.size() == 80);
  CHECK(modes[1].phi == doctest::Approx(pi / 3));
  CHECK(modes[1].kick() == doctest::Approx(modes[1].k * std::sin(pi / 3)));
  CHECK(modes[0].g == doctest::Approx(coupling_g(modes[0].k, p) *
                                      std::sqrt(g.k_weights[0] * 0.5)));

  CHECK_THROWS_AS(ModeGrid::uniform(p, 0, 1.0), ConfigError);
  CHECK_THROWS_AS(ModeGrid::uniform(p, 4, 2.0), ConfigError);
  CHECK_THROWS_AS(ModeGrid::uniform(p, 4, 0.1, {}), ConfigError);
}

TEST_CASE("gaussian momentum amplitude is normalized") {
  const auto c = MomentumAmplitude::gaussian(0.7, 1.5, 801, 4.0, 0.2);
  CHECK(std::abs(c.norm() - 1.0) <= 1e-10);
  CHECK(c.cap_p == 0.2);
  CHECK_THROWS_AS(MomentumAmplitude::gaussian(0.0, 0.0, 10, 1.0), DomainError);
}
