#include "km2d/errors.hpp"
#include "km2d/lie_core.hpp"

#include <doctest.h>

using namespace km2d;

TEST_SUITE("lie_core") {
  TEST_CASE("so3 adjoint matches Levi-Civita oracle") {
    const LieAlgebraRep rep = build_so_adjoint(3);
    CHECK(rep.d == 3);
    CHECK(rep.dim_g == 3);
    CHECK(rep.c_m == 2.0);
    // (M_1)_{23} = -1, (M_1)_{32} = +1
    CHECK(rep.generators[0](1, 2) == -1.0);
    CHECK(rep.generators[0](2, 1) == 1.0);
    auto eps = [](int a, int b, int c) { return 0.5 * (a - b) * (b - c) * (c - a); };
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) CHECK(rep.structure(a, b, c) == eps(a, b, c));
  }

  TEST_CASE("validation invariants are exact for shipped reps") {
    for (const char* name : {"so3-adjoint", "so4-adjoint", "so5-vector", "free2"}) {
      CAPTURE(name);
      const RepValidation v = validate_rep(RepRegistry::instance().build(name));
      CHECK(v.pass);
      CHECK(v.antisymmetry == 0.0);
      CHECK(v.commutation <= 1e-12);
      CHECK(v.jacobi <= 1e-12);
      CHECK(v.trace_norm <= 1e-12);
    }
  }

  TEST_CASE("so(n) dimensions") {
    CHECK(build_so_adjoint(4).dim_g == 6);
    CHECK(build_so_adjoint(4).d == 6);
    CHECK(build_so_vector(4).d == 4);
    CHECK(build_trivial(3).dim_g == 0);
  }

  TEST_CASE("structure constants recomputed from generators") {
    const LieAlgebraRep rep = build_so_vector(4);
    const auto f = structure_from_generators(rep.generators, rep.c_m);
    for (size_t k = 0; k < f.size(); ++k) CHECK(f[k] == doctest::Approx(rep.f[k]).epsilon(1e-14));
  }

  TEST_CASE("broken representation is rejected") {
    LieAlgebraRep rep = build_so_adjoint(3);
    rep.generators[0](0, 1) = 0.5;
    CHECK_FALSE(validate_rep(rep).pass);
    LieAlgebraRep bad = build_so_adjoint(3);
    bad.generators.pop_back();
    CHECK_FALSE(validate_rep(bad).structural_ok);
  }

  TEST_CASE("unknown rep name") {
    CHECK_THROWS_AS(RepRegistry::instance().build("su3-adjoint"), InvalidArgument);
  }
}
