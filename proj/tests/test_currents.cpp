#include "km2d/currents.hpp"
#include "km2d/errors.hpp"
#include "test_support.hpp"

#include <set>

#include <doctest.h>

using namespace km2d;
using namespace km2d::testing;

namespace {
const HalfInt h1 = HalfInt::from_twice(1);
const HalfInt h3 = HalfInt::from_twice(3);
const LieAlgebraRep so3 = build_so_adjoint(3);

std::vector<FockState> full_basis(const FockSpace& s) {
  return s.enumerate({}, s.num_slots(), HalfInt::from_int(1000));
}
}  // namespace

TEST_SUITE("currents") {
  TEST_CASE("vacuum expectations vanish in the NS,NS torus") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, h3, h3));
    const FockState vac = s.vacuum_states()[0];
    for (int a = 0; a < 3; ++a) CHECK(torus_T(s, so3, a, 0, 0).apply(vac).max_abs() == 0.0);
    CHECK(torus_L(s, 0, 0).apply(vac).max_abs() == 0.0);
  }

  TEST_CASE("L00 counts the z-level") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, h3, h3));
    const Operator l00 = torus_L(s, 0, 0);
    for (const ModeLabel& x : s.modes()) {
      if (s.resolve(x).kind != Action::Kind::Create) continue;
      const StateVector one = mode_operator(s, x).apply(s.vacuum_states()[0]);
      StateVector r = l00.apply(one);
      r.axpy(-(-x.m.value()), one);
      CHECK(r.max_abs() <= 1e-15);
    }
  }

  TEST_CASE("R vacuum shift lambda d") {
    for (Boundary ang : {Boundary::NS, Boundary::R}) {
      const HalfInt pc = ang == Boundary::R ? HalfInt::from_int(1) : h1;
      FockSpace s(SectorConfig::torus(Boundary::R, ang, 3, HalfInt::from_int(1), pc));
      const Operator l00 = torus_L(s, 0, 0);
      for (const FockState& v : s.vacuum_states()) {
        StateVector r = l00.apply(v);
        CHECK(r.amplitude(v) == cplx(3.0 / 16.0));
        r.add(v, -3.0 / 16.0);
        CHECK(r.max_abs() <= 1e-15);
      }
    }
  }

  TEST_CASE("grading shifts by (-m,-p)") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, h3, h3));
    const auto basis = s.enumerate({}, 2, HalfInt::from_int(2));
    for (auto [m, p] : {std::pair{1, 0}, {1, 1}, {-1, 2}, {2, -1}}) {
      const Operator t = torus_T(s, so3, 0, m, p);
      const Operator l = torus_L(s, m, p);
      for (const FockState& psi : basis) {
        const auto [lv, ch] = s.grade(psi);
        for (const Operator* op : {&t, &l})
          for (const auto& [out, amp] : op->apply(psi).entries()) {
            const auto [lv2, ch2] = s.grade(out);
            CHECK((lv2 - lv).twice() == -2 * m);
            CHECK((ch2 - ch).twice() == -2 * p);
          }
      }
    }
  }

  TEST_CASE("adjoints on the full truncated space") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, h3, h1));
    const auto basis = full_basis(s);
    for (int a = 0; a < 3; ++a)
      CHECK(adjoint_mismatch(sparse_elements(torus_T(s, so3, a, 1, 1), basis),
                             sparse_elements(torus_T(s, so3, a, -1, -1), basis)) <= 1e-15);
    CHECK(adjoint_mismatch(sparse_elements(torus_L(s, 1, 1), basis),
                           sparse_elements(torus_L(s, -1, -1), basis)) <= 1e-15);
    CHECK(adjoint_mismatch(sparse_elements(torus_L(s, 2, 0), basis),
                           sparse_elements(torus_L(s, -2, 0), basis)) <= 1e-15);
  }

  TEST_CASE("adjoints with Clifford zero modes") {
    FockSpace s(SectorConfig::torus(Boundary::R, Boundary::R, 3, HalfInt::from_int(1),
                                    HalfInt::from_int(1)));
    const auto basis = s.enumerate({}, 3, HalfInt::from_int(100));
    // only states reachable within three particles; compare on the subspace closed
    // under both operators by restricting to in/out pairs inside it
    auto restrict = [&](SparseMatrix m) {
      std::set<FockState> in(basis.begin(), basis.end());
      std::erase_if(m, [&](const auto& kv) { return !in.count(kv.first.first); });
      return m;
    };
    for (auto [m, p] : {std::pair{1, 0}, {0, 1}, {1, -1}, {0, 0}}) {
      CHECK(adjoint_mismatch(restrict(sparse_elements(torus_T(s, so3, 1, m, p), basis)),
                             restrict(sparse_elements(torus_T(s, so3, 1, -m, -p), basis))) <= 1e-15);
      CHECK(adjoint_mismatch(restrict(sparse_elements(torus_L(s, m, p), basis)),
                             restrict(sparse_elements(torus_L(s, -m, -p), basis))) <= 1e-15);
    }
  }

  TEST_CASE("eps weights only shrink entries") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, h3, h3));
    const auto basis = s.enumerate({}, 2, HalfInt::from_int(2));
    const auto e0 = sparse_elements(torus_T(s, so3, 2, 1, 1), basis);
    const auto e1 = sparse_elements(torus_T(s, so3, 2, 1, 1, 0.3), basis);
    CHECK(e0.size() == e1.size());
    for (const auto& [k, v] : e0) {
      const cplx w = e1.at(k) / v;
      CHECK(std::abs(w.imag()) <= 1e-15);
      CHECK(w.real() > 0.0);
      CHECK(w.real() <= 1.0 + 1e-15);
    }
  }

  TEST_CASE("sphere currents") {
    const StructureTable table = StructureTable::build(4);
    FockSpace r(SectorConfig::sphere(Boundary::R, 3, HalfInt::from_int(2)));
    FockSpace ns(SectorConfig::sphere(Boundary::NS, 3, h3));
    CHECK(sphere_T(ns, so3, 0, 0, 0, table).apply(ns.vacuum_states()[0]).max_abs() <= 1e-15);

    const auto basis = r.enumerate({}, 2, HalfInt::from_int(2));
    for (auto [l, m] : {std::pair{1, 1}, {2, -1}, {1, 0}}) {
      const Operator t = sphere_T(r, so3, 0, l, m, table);
      for (const FockState& psi : basis)
        for (const auto& [out, amp] : t.apply(psi).entries())
          CHECK((r.grade(out).second - r.grade(psi).second).twice() == -2 * m);
    }

    const StructureTable tiny = StructureTable::build(0);
    FockSpace r0(SectorConfig::sphere(Boundary::R, 3, HalfInt::from_int(0)));
    try {
      sphere_T(r0, so3, 0, 1, 0, tiny);
      FAIL("expected coverage error");
    } catch (const TableCoverageError& e) {
      CHECK(e.missing_degree() == 1);
    }
  }

  TEST_CASE("sphere adjoint with the (-1)^m reality map") {
    const StructureTable table = StructureTable::build(4);
    FockSpace r(SectorConfig::sphere(Boundary::R, 1, HalfInt::from_int(2)));
    const auto basis = full_basis(r);
    for (auto [l, m] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
      const double sign = (m % 2) ? -1.0 : 1.0;
      Operator lm = sphere_L(r, l, -m, table);
      Operator scaled(r);
      scaled.add(sign, lm);
      CHECK(adjoint_mismatch(sparse_elements(sphere_L(r, l, m, table), basis),
                             sparse_elements(scaled, basis)) <= 1e-14);
    }
  }
}
