#include "km2d/errors.hpp"
#include "km2d/regulator.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

using namespace km2d;

TEST_SUITE("regulator") {
  TEST_CASE("zeta(0,a) values from the zeta-regularised multiplicities") {
    CHECK(2 * hurwitz_zeta_at_zero(0.0) == 1.0);
    CHECK(2 * hurwitz_zeta_at_zero(-0.5) - 1 == 1.0);
    CHECK(hurwitz_zeta_at_zero(0.5) == 0.0);
  }

  TEST_CASE("finite parts of step-1 tails") {
    for (auto [off, fin] : {std::pair{0.0, 0.5}, {-0.5, 1.0}, {1.0, -0.5}}) {
      const LaurentData ld = heat_sum_finite_part(HeatSum::tail(1.0, off));
      CHECK(ld.pole == 0.5);
      CHECK(ld.finite == fin);
      CHECK(ld.finite == hurwitz_zeta_at_zero(off));
    }
    CHECK(heat_sum_finite_part(HeatSum::tail(2.0, 0.0)).pole == 0.25);
    CHECK_THROWS_AS(heat_sum_finite_part(HeatSum::tail(0.0, 0.0)), InvalidArgument);
  }

  TEST_CASE("Richardson oracle agrees with the Laurent finite part") {
    for (double step : {1.0, 2.0})
      for (double off : {-0.5, 0.0, 0.25, 1.0, 1.0 - std::numbers::pi / 2})
        for (double eps0 : {0.1, 0.05, 0.025}) {
          CAPTURE(step);
          CAPTURE(off);
          CAPTURE(eps0);
          const HeatSum s = HeatSum::tail(step, off);
          CHECK(std::abs(richardson_finite_part(s, eps0) - heat_sum_finite_part(s).finite) <= 1e-8);
        }
  }

  TEST_CASE("closed form and numeric evaluation agree") {
    HeatSum s = HeatSum::tail(2.0, 0.3, 1.5);
    s.terms.push_back({2.0, -1.0});
    CHECK(std::abs(static_cast<double>(s.evaluate(0.07L) - s.evaluate_numeric(0.07L))) <= 1e-10);
  }

  TEST_CASE("torus delta_eps closed forms") {
    // 2/(1-e^{-0.2}) and e^{0.1}(1+e^{-0.2})/(1-e^{-0.2})
    CHECK(torus_delta_eps(0.0, 0.1, Boundary::NS) == doctest::Approx(11.033311132254).epsilon(1e-12));
    CHECK(torus_delta_eps(0.0, 0.1, Boundary::R) == doctest::Approx(11.088523675372).epsilon(1e-12));
    CHECK_THROWS_AS(torus_delta_eps(0.0, 0.0, Boundary::R), InvalidArgument);
  }

  TEST_CASE("torus delta_eps pairing with lattice modes") {
    // Trapezoid rule on [0, 4 pi) is exact for trigonometric polynomials of
    // low degree; the geometric tail beyond the node count is below 1e-13.
    const int n_nodes = 4096;
    const double eps = 0.05;
    for (Boundary b : {Boundary::NS, Boundary::R})
      for (int tn = -7; tn <= 7; ++tn) {
        if ((b == Boundary::R) != (tn % 2 == 0)) continue;
        double s = 0.0;
        for (int k = 0; k < n_nodes; ++k) {
          const double th = 4.0 * std::numbers::pi * k / n_nodes;
          s += torus_delta_eps(th, eps, b) * std::cos(0.5 * tn * th);
        }
        s /= n_nodes;
        CHECK(std::abs(s - std::exp(-2 * eps * (std::abs(0.5 * tn) - 0.5))) <= 1e-12);
      }
  }

  TEST_CASE("regularised delta(0) is 1 for supported descriptors") {
    CHECK(delta_reg_zero({Geometry::Torus, Boundary::NS, 0}) == 1.0);
    CHECK(delta_reg_zero({Geometry::Torus, Boundary::R, 0}) == 1.0);
    for (int m : {0, 1, 2, -3})
      CHECK(std::abs(delta_reg_zero({Geometry::Sphere, Boundary::R, m}) - 1.0) <= 1e-14);
    CHECK_THROWS_AS(delta_reg_zero({Geometry::Sphere, Boundary::NS, 0}), UnresolvedPrescription);
  }

  TEST_CASE("a_m enters the finite part linearly") {
    for (int m : {0, 1, 2}) {
      const double a = solve_a_m(m);
      const double l0 = m % 2;
      auto fin = [&](double shift) {
        return heat_sum_finite_part(HeatSum::tail(2.0, l0 + m + a + shift, 4 / std::numbers::pi))
            .finite;
      };
      CHECK(fin(0.0) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK((fin(0.1) - fin(0.0)) / 0.1 == doctest::Approx(-2 / std::numbers::pi).epsilon(1e-12));
    }
  }

  TEST_CASE("sphere asymptotics: partial sums match C_m plus the geometric tail") {
    // The O(eps) mismatch grows like m^2, so m = 2 needs a smaller eps.
    for (auto [m, eps, l_max] : {std::tuple{0, 0.05, 400}, {1, 0.05, 400}, {2, 0.005, 8000}}) {
      CAPTURE(m);
      const double partial = sphere_delta_eps_partial(m, eps, l_max);
      const double tail = static_cast<double>(
          delta_heat_sum({Geometry::Sphere, Boundary::R, m}).evaluate(eps));
      const double c_m = sphere_constant_c_m(m);
      CHECK(std::abs(partial - (c_m + tail)) <= 0.01 * std::abs(partial));
    }
  }
}
