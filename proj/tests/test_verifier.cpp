#include "km2d/errors.hpp"
#include "km2d/verifier.hpp"

#include <doctest.h>

#include <cmath>

using namespace km2d;

namespace {
const LieAlgebraRep so3 = build_so_adjoint(3);

HalfInt cut(Boundary b, int whole) {
  return b == Boundary::R ? HalfInt::from_int(whole) : HalfInt::from_twice(2 * whole - 1);
}

VerifyOptions small_options(const char* window, int max_mode) {
  VerifyOptions o;
  o.window = Window::parse(window);
  o.max_mode = max_mode;
  return o;
}
}  // namespace

TEST_SUITE("verifier") {
  TEST_CASE("torus closure at max_mode 1 in every sector") {
    for (Boundary z : {Boundary::NS, Boundary::R})
      for (Boundary a : {Boundary::NS, Boundary::R}) {
        FockSpace space(SectorConfig::torus(z, a, 3, cut(z, 3), cut(a, 3)));
        const auto opt = small_options(a == Boundary::R ? "1,1,2" : "1,3/2,2", 1);
        const CommutatorReport r = check_torus_algebra(space, so3, opt);
        INFO(to_string(z), ",", to_string(a));
        CHECK(r.pass);
        CHECK(r.max_residual <= 1e-10);
        CHECK(std::abs(r.charges.c_measured - 1.5) <= 1e-9);
        CHECK(std::abs(r.charges.k_measured - 1.0) <= 1e-9);
        CHECK(r.lt_matches_minus_n);
      }
  }

  TEST_CASE("bracket antisymmetry") {
    FockSpace space(SectorConfig::torus(Boundary::NS, Boundary::R, 3, cut(Boundary::NS, 3),
                                        cut(Boundary::R, 3)));
    const auto opt = small_options("1,1,2", 1);
    const auto basis = window_states(space, opt.window);
    CurrentCache cache(space, so3, nullptr);
    const CurrentSpec pairs[][2] = {
        {CurrentSpec::torus_L(1, 0), CurrentSpec::torus_L(-1, 0)},
        {CurrentSpec::torus_T(0, 1, 1), CurrentSpec::torus_T(0, -1, -1)},
        {CurrentSpec::torus_L(1, -1), CurrentSpec::torus_T(2, 0, 1)},
    };
    for (const auto& p : pairs) {
      const BracketResult xy = evaluate_bracket(space, so3, p[0], p[1], basis, cache, opt);
      const BracketResult yx = evaluate_bracket(space, so3, p[1], p[0], basis, cache, opt);
      CHECK(xy.pass);
      CHECK(yx.pass);
      CHECK(std::abs(xy.kappa + yx.kappa) <= 1e-12);
      CHECK(std::abs(xy.central_measured + yx.central_measured) <= 1e-12);
    }
  }

  TEST_CASE("serial and parallel window matrices are identical") {
    FockSpace space(SectorConfig::torus(Boundary::R, Boundary::NS, 3, cut(Boundary::R, 3),
                                        cut(Boundary::NS, 3)));
    const auto basis = window_states(space, Window::parse("1,3/2,2"));
    const Operator x = build_current(space, so3, CurrentSpec::torus_L(1, 0));
    const Operator y = build_current(space, so3, CurrentSpec::torus_T(1, -1, 1));
    CHECK(commutator_on_window(x, y, basis, Execution::Serial) ==
          commutator_on_window(x, y, basis, Execution::Parallel));
    CHECK(operator_on_window(y, basis, Execution::Serial) ==
          operator_on_window(y, basis, Execution::Parallel));

    auto opt = small_options("1,3/2,2", 1);
    opt.exec = Execution::Serial;
    const CommutatorReport s = check_torus_algebra(space, so3, opt);
    opt.exec = Execution::Parallel;
    const CommutatorReport p = check_torus_algebra(space, so3, opt);
    REQUIRE(s.brackets.size() == p.brackets.size());
    for (size_t i = 0; i < s.brackets.size(); ++i) {
      CHECK(s.brackets[i].lhs == p.brackets[i].lhs);
      CHECK(s.brackets[i].residual == p.brackets[i].residual);
    }
  }

  TEST_CASE("window precondition") {
    FockSpace space(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, HalfInt::from_twice(3),
                                        HalfInt::from_twice(3)));
    CHECK_THROWS_AS(check_window(space, Window::parse("1,1/2,2"), CurrentSpec::torus_L(2, 0),
                                 CurrentSpec::torus_L(-2, 0)),
                    WindowError);
    CHECK_NOTHROW(check_window(space, Window::parse("1/2,1/2,1"), CurrentSpec::torus_L(1, 0),
                               CurrentSpec::torus_L(-1, 0)));
    CHECK_THROWS_AS(check_torus_algebra(space, so3, small_options("1,1/2,2", 2)), WindowError);
  }

  TEST_CASE("measured central terms do not depend on the window") {
    FockSpace space(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, cut(Boundary::NS, 4),
                                        cut(Boundary::NS, 4)));
    CurrentCache cache(space, so3, nullptr);
    const CurrentSpec x = CurrentSpec::torus_L(2, 0), y = CurrentSpec::torus_L(-2, 0);
    std::vector<double> values;
    for (const char* w : {"1/2,1/2,1", "1,3/2,2", "3/2,3/2,2"}) {
      const auto opt = small_options(w, 2);
      const BracketResult b =
          evaluate_bracket(space, so3, x, y, window_states(space, opt.window), cache, opt);
      CHECK(b.pass);
      values.push_back(b.central_measured);
    }
    CHECK(values[0] == doctest::Approx(values[1]).epsilon(1e-12));
    CHECK(values[0] == doctest::Approx(values[2]).epsilon(1e-12));
    CHECK(std::abs(values[0] - 0.125 * 2 * 3) <= 1e-9);
  }

  TEST_CASE("operator part is cutoff-independent beyond the exactness bound") {
    const auto w = Window::parse("1,1,2");
    std::vector<Eigen::MatrixXcd> mats;
    for (int twice : {7, 9, 11}) {
      FockSpace space(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, HalfInt::from_twice(twice),
                                          HalfInt::from_twice(twice)));
      const auto basis = window_states(space, w);
      const Operator x = build_current(space, so3, CurrentSpec::torus_L(2, 1));
      const Operator y = build_current(space, so3, CurrentSpec::torus_T(1, -1, -2));
      mats.push_back(commutator_on_window(x, y, basis));
    }
    CHECK(mats[0] == mats[1]);
    CHECK(mats[1] == mats[2]);
  }

  TEST_CASE("sphere R realization closes") {
    const StructureTable table = StructureTable::build(6);
    FockSpace space(SectorConfig::sphere(Boundary::R, 3, HalfInt::from_int(3)));
    const CommutatorReport r = check_sphere_realization(space, so3, table, small_options("1,1,2", 1));
    CHECK(r.pass);
    CHECK(r.max_residual <= 1e-10);
    CHECK(std::abs(r.charges.c_measured - 1.5) <= 1e-9);
    CHECK(std::abs(r.charges.k_measured - 1.0) <= 1e-9);
  }

  TEST_CASE("sphere NS closure improves with the angular cutoff") {
    const StructureTable table = StructureTable::build(10);
    std::vector<CurrentSpec> specs;
    for (int l = 0; l <= 1; ++l)
      for (int m = -l; m <= l; ++m) {
        specs.push_back(CurrentSpec::sphere_L(l, m));
        specs.push_back(CurrentSpec::sphere_T(0, l, m));
      }
    std::vector<double> worst;
    for (int twice : {3, 5, 9}) {
      FockSpace space(SectorConfig::sphere(Boundary::NS, 3, HalfInt::from_twice(twice)));
      auto opt = small_options("1,1/2,2", 1);
      opt.method = CentralMethod::Raw;
      const auto basis = window_states(space, opt.window);
      CurrentCache cache(space, so3, &table);
      double w = 0.0;
      for (size_t i = 0; i < specs.size(); ++i)
        for (size_t j = i; j < specs.size(); ++j)
          w = std::max(w, evaluate_bracket(space, so3, specs[i], specs[j], basis, cache, opt, &table)
                              .residual);
      worst.push_back(w);
    }
    CHECK(worst[1] < worst[0]);
    CHECK(worst[2] < 0.5 * worst[1]);
  }

  TEST_CASE("sphere NS analytic central is unresolved") {
    const StructureTable table = StructureTable::build(6);
    FockSpace space(SectorConfig::sphere(Boundary::NS, 3, HalfInt::from_twice(5)));
    CHECK_THROWS_AS(check_sphere_realization(space, so3, table, small_options("1,1/2,2", 1)),
                    UnresolvedPrescription);
  }
}
