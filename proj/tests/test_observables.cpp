#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kinkfield/background.hpp"
#include "kinkfield/errors.hpp"
#include "kinkfield/observables.hpp"

using namespace kinkfield;

namespace {

// Total field energy from integrating the density in closed form:
// |C| / sqrt(lambda (1 - s^2)) [1/s^2 + (1 - 1/s^2) artanh(s)/s - 2/3].
double energy_oracle(double kappa, double lambda, double C) {
  const double s2 = kappa / (2 * lambda);
  const double s = std::sqrt(s2);
  const double bracket = 1 / s2 + (1 - 1 / s2) * std::atanh(s) / s - 2.0 / 3.0;
  return std::abs(C) / std::sqrt(lambda * (1 - s2)) * bracket;
}

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0 : std::abs(a - b) / s;
}

struct Case {
  double kappa, lambda, C, x1;
};
const std::vector<Case> kCases = {
    {1, 1, 1, 0}, {0.5, 1, 1, 0}, {0, 1, 1, 0}, {1, 2, 0.5, 0}, {0.3, 0.7, -1.5, 2}};

}  // namespace

TEST_CASE("stress-energy at the kink center") {
  const auto p = derive_params(1, 1, 1);
  const auto t = stress_energy(background_point(p, 0.0), p);
  CHECK(t.T00 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t.T22 == t.T33);
  CHECK(t.T11 == -t.T22);
}

TEST_CASE("flat stress-energy at the center is C^2") {
  for (double C : {1.0, 2.0, -0.5}) {
    const auto p = derive_params(0, 1, C);
    const auto t = stress_energy(background_point(p, 0.0), p);
    CHECK(t.T00 == doctest::Approx(C * C).epsilon(1e-14));
    // The two contributions cancel in the pressure at the center.
    CHECK(std::abs(t.T11) <= 1e-14);
  }
}

TEST_CASE("transverse components are equal everywhere") {
  for (const auto& c : kCases) {
    const auto p = derive_params(c.kappa, c.lambda, c.C, c.x1);
    for (double u = -30; u <= 30; u += 0.45) {
      const auto t = stress_energy(background_point(p, c.x1 + u / p.b()), p);
      CHECK(t.T22 == t.T33);
      CHECK(t.T11 == -t.T22);
    }
  }
}

TEST_CASE("energy density and its closed form") {
  const auto flat = derive_params(0, 1, 1);
  const auto c = energy_density(background_point(flat, 0.0), flat);
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.closed_form == doctest::Approx(1.0).epsilon(1e-15));
  // sinh^2(b x) > 1/2 makes the flat density negative.
  const double x = std::asinh(1.0) / flat.b();
  const auto neg = energy_density(background_point(flat, x), flat);
  CHECK(neg.value < 0.0);
  CHECK(neg.value == doctest::Approx(-1.0 / 4.0).epsilon(1e-14));  // (1 - 2) / cosh^4 with cosh^2 = 2

  std::mt19937_64 rng(3);
  for (const auto& cs : kCases) {
    const auto p = derive_params(cs.kappa, cs.lambda, cs.C, cs.x1);
    std::uniform_real_distribution<double> dist(cs.x1 - 12 / p.b(), cs.x1 + 12 / p.b());
    for (int i = 0; i < 200; ++i) {
      const auto d = energy_density(background_point(p, dist(rng)), p);
      CHECK(rel(d.value, d.closed_form) <= 1e-10);
    }
  }
}

TEST_CASE("energy density equals T00 times the spatial volume factor") {
  for (const auto& cs : kCases) {
    const auto p = derive_params(cs.kappa, cs.lambda, cs.C, cs.x1);
    for (double u = -8; u <= 8; u += 0.3) {
      const auto pt = background_point(p, cs.x1 + u / p.b());
      const double expected = stress_energy(pt, p).T00 * spatial_volume_factor(pt);
      CHECK(energy_density(pt, p).value == doctest::Approx(expected).epsilon(1e-13).scale(1e-14));
    }
  }
}

TEST_CASE("only the sigma-squared reading of the reference density matches") {
  const auto p = derive_params(1, 1, 1);
  const auto pt = background_point(p, 0.7);
  const auto good = energy_density(pt, p, EnergyClosedForm::SigmaSquared);
  const auto literal = energy_density(pt, p, EnergyClosedForm::LiteralSigma);
  CHECK(rel(good.value, good.closed_form) <= 1e-12);
  CHECK(rel(literal.value, literal.closed_form) > 1e-3);
  // In flat space sigma = 0 and both readings coincide.
  const auto f = derive_params(0, 1, 1);
  const auto fp = background_point(f, 0.7);
  CHECK(energy_density(fp, f, EnergyClosedForm::LiteralSigma).closed_form ==
        doctest::Approx(energy_density(fp, f).closed_form));
}

TEST_CASE("energy density is localized") {
  for (const auto& cs : kCases) {
    const auto p = derive_params(cs.kappa, cs.lambda, cs.C, cs.x1);
    const double peak = std::abs(energy_density(background_point(p, cs.x1), p).value);
    for (double u : {20.0, -20.0, 100.0, 1e4}) {
      const double v = energy_density(background_point(p, cs.x1 + u / p.b()), p).value;
      CHECK(std::abs(v) <= 1e-15 * peak);
    }
  }
}

TEST_CASE("total energy against the closed-form oracle") {
  for (double sigma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double kappa = 2 * sigma * sigma;
    const auto e = total_energy(derive_params(kappa, 1, 1), 1e-12);
    CHECK(e.quadrature_x.converged);
    CHECK(e.quadrature_I.converged);
    CHECK(e.discrepancy_x_vs_I <= 1e-8);
    CHECK(e.quadrature_x.value == doctest::Approx(energy_oracle(kappa, 1, 1)).epsilon(1e-9));
    CHECK(e.quadrature_x.value > 0.0);
  }
  const auto e = total_energy(derive_params(1, 2, -0.5, 3.0), 1e-12);
  CHECK(e.quadrature_I.value == doctest::Approx(energy_oracle(1, 2, -0.5)).epsilon(1e-9));
}

TEST_CASE("flat-space total energy vanishes") {
  for (double C : {1.0, 3.0}) {
    const auto e = total_energy(derive_params(0, 1, C), 1e-12);
    CHECK(std::abs(e.quadrature_x.value) <= 1e-10);
    CHECK(std::abs(e.quadrature_I.value) <= 1e-10);
  }
}

TEST_CASE("total energy vanishes like 2 sigma^2 / 15 as sigma -> 0") {
  for (double kappa : {1e-2, 1e-3, 1e-4}) {
    const auto e = total_energy(derive_params(kappa, 1, 1), 1e-13);
    const double s2 = kappa / 2;
    CHECK(e.quadrature_x.value == doctest::Approx(2 * s2 / 15).epsilon(2 * s2 + 1e-8));
    // The reference closed form keeps a finite limit instead.
    CHECK(e.closed_form == doctest::Approx(1.0 / 3.0).epsilon(0.01));
  }
}

TEST_CASE("reference total energy formula") {
  CHECK(energy_closed_form(derive_params(0, 4, 3)) == doctest::Approx(3.0 / 6.0));
  const double s = std::sqrt(0.5);
  const double expected = 1.0 / (2 * std::pow(0.5, 1.5)) *
                          (s / std::sqrt(1 - 0.5) - std::sqrt(1 - 0.5) / 2 * std::log((1 + s) / (1 - s)));
  CHECK(energy_closed_form(derive_params(1, 1, 1)) == doctest::Approx(expected).epsilon(1e-14));
  // Continuity across the switch to the small-sigma series at sigma = 1e-2.
  const double below = energy_closed_form(derive_params(2 * 0.0099999999 * 0.0099999999, 1, 1));
  const double above = energy_closed_form(derive_params(2 * 0.0100000001 * 0.0100000001, 1, 1));
  CHECK(below == doctest::Approx(above).epsilon(1e-11));
  CHECK(energy_closed_form(derive_params(2e-6, 1, 1)) ==
        doctest::Approx(1.0 / 3.0 * (1 + 0.7e-6 + 157.0 / 280 * 1e-12)).epsilon(1e-14));
}

TEST_CASE("discrepancy metric") {
  CHECK(discrepancy(1e-3, 2e-3) == doctest::Approx(1e-3));
  CHECK(discrepancy(100, 101) == doctest::Approx(1.0 / 101));
  CHECK(discrepancy(-2, 2) == doctest::Approx(2.0));
}

TEST_CASE("charge density examples") {
  for (const auto& cs : kCases) {
    const auto p = derive_params(cs.kappa, cs.lambda, cs.C, cs.x1);
    const auto center = charge_density(background_point(p, cs.x1), p);
    CHECK(center.value == 0.0);
    CHECK(center.closed_form == 0.0);
    CHECK(current_density(background_point(p, cs.x1), p) == 0.0);
    for (double u : {-1e3, 1e3}) {
      const auto far = charge_density(background_point(p, cs.x1 + u / p.b()), p);
      CHECK(far.value == 0.0);
      CHECK(far.closed_form == 0.0);
    }
  }
  const auto flat = derive_params(0, 1, 1);
  const auto pt = background_point(flat, std::acosh(std::sqrt(2.0)));
  const auto q = charge_density(pt, flat);
  CHECK(q.value == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(q.closed_form == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(current_density(pt, flat) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("charge density routes agree and relate to the current") {
  std::mt19937_64 rng(5);
  for (const auto& cs : kCases) {
    const auto p = derive_params(cs.kappa, cs.lambda, cs.C, cs.x1);
    std::uniform_real_distribution<double> dist(cs.x1 - 12 / p.b(), cs.x1 + 12 / p.b());
    for (int i = 0; i < 200; ++i) {
      const auto pt = background_point(p, dist(rng));
      const auto q = charge_density(pt, p);
      CHECK(rel(q.value, q.closed_form) <= 1e-10);
      CHECK(rel(q.value * sqrt_g00_upper(pt), current_density(pt, p)) <= 1e-12);
    }
  }
}

TEST_CASE("total and half-line charges") {
  for (const auto& cs : kCases) {
    const auto p = derive_params(cs.kappa, cs.lambda, cs.C, cs.x1);
    const auto q = total_charge(p, 1e-10);
    CHECK(q.converged);
    CHECK(std::abs(q.value) <= 1e-10);
    const auto left = half_charge(p, HalfLine::Left, 1e-10);
    const auto right = half_charge(p, HalfLine::Right, 1e-10);
    // Gauss: the half charge is the flux e^{-2 gamma} A' at the center.
    // A depends on |C| only, so the right half is positive for either sign.
    const double flux = std::abs(cs.C) / std::sqrt(1 - cs.kappa / (2 * cs.lambda));
    CHECK(right.value == doctest::Approx(flux).epsilon(1e-10));
    CHECK(std::abs(left.value + right.value) <= 1e-12 * std::abs(right.value));
  }
  CHECK(half_charge(derive_params(1, 1, 1), HalfLine::Right).value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("unreachable tolerances raise QuadratureError") {
  CHECK_THROWS_AS(total_energy(derive_params(1, 1, 1), 1e-300), QuadratureError);
  CHECK_THROWS_AS(total_charge(derive_params(1, 1, 1), 1e-300), QuadratureError);
}

TEST_CASE("density CSV") {
  const auto p = derive_params(1, 1, 1);
  std::ostringstream out;
  write_density_csv(out, sample_profile(p, 5));
  CHECK(out.str().rfind("x,energy_density,charge_density,T00,T11\n", 0) == 0);
}
