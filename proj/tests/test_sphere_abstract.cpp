#include "km2d/errors.hpp"
#include "km2d/sphere_abstract.hpp"

#include <doctest.h>

using namespace km2d;

TEST_SUITE("sphere_abstract") {
  TEST_CASE("Jacobi identity up to l = 2") {
    const StructureTable table = StructureTable::build(8);
    const JacobiReport r = check_sphere_abstract(table, build_so_adjoint(3), 2, 1e-10);
    CHECK(r.pass);
    CHECK(r.max_residual <= 1e-10);
    CHECK(r.triples == 8436);
    for (const auto& [family, v] : r.max_by_family) {
      INFO(family);
      CHECK(v <= 1e-10);
    }
  }

  TEST_CASE("so(4) vector and Virasoro-only algebras") {
    const StructureTable table = StructureTable::build(3);
    CHECK(check_sphere_abstract(table, build_so_vector(4), 1, 1e-10).pass);
    CHECK(check_sphere_abstract(table, build_trivial(2), 1, 1e-10).pass);
  }

  TEST_CASE("central charges are free parameters") {
    const StructureTable table = StructureTable::build(3);
    const LieAlgebraRep so3 = build_so_adjoint(3);
    using G = SphereAlgebra;
    for (double c : {0.0, 1.5, 7.0}) {
      const SphereAlgebra alg(table, so3, c, -2.5);
      CHECK(alg.jacobi(G::L(1, 1), G::L(1, -1), G::L(0, 0)) <= 1e-12);
      CHECK(alg.jacobi(G::T(0, 1, 1), G::T(1, 1, -1), G::L(1, 0)) <= 1e-12);
    }
  }

  TEST_CASE("table coverage") {
    const StructureTable table = StructureTable::build(5);
    CHECK_THROWS_AS(check_sphere_abstract(table, build_so_adjoint(3), 2, 1e-10), TableCoverageError);
  }

  TEST_CASE("brackets against direct table values") {
    const StructureTable table = StructureTable::build(4);
    const SphereAlgebra alg(table, build_so_adjoint(3), 1.5, 1.0);
    using G = SphereAlgebra;
    const auto e = alg.bracket(G::L(1, 1), G::L(1, -1));
    for (int l3 = 0; l3 <= 2; ++l3) {
      const auto it = e.find(G::L(l3, 0));
      const double want = 2.0 * table(1, 1, 1, -1, l3);
      CHECK(std::abs((it == e.end() ? 0.0 : it->second) - want) <= 1e-14);
    }
    // (-1)^1 (c/12) * 1 * 0 = 0 for m = 1; the T level term is -k.
    const auto t = alg.bracket(G::T(0, 1, 1), G::T(0, 1, -1));
    CHECK(std::abs(t.at({2, 0, 0, 0}) + 1.0) <= 1e-14);
  }
}
