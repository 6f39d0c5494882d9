#include "km2d/errors.hpp"
#include "km2d/fock.hpp"

#include <doctest.h>

using namespace km2d;

namespace {

std::vector<FockState> full_basis(const FockSpace& s) {
  return s.enumerate({}, s.num_slots(), HalfInt::from_int(1000));
}

std::vector<std::pair<ModeLabel, ModeLabel>> all_pairs(const FockSpace& s) {
  std::vector<std::pair<ModeLabel, ModeLabel>> out;
  for (const auto& x : s.modes())
    for (const auto& y : s.modes()) out.emplace_back(x, y);
  return out;
}

const HalfInt h1 = HalfInt::from_twice(1);
const HalfInt h3 = HalfInt::from_twice(3);

}  // namespace

TEST_SUITE("fock") {
  TEST_CASE("torus NS CAR on the full truncated space") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 1, h3, h1));
    CHECK(s.num_generators() == 0);
    CHECK(s.num_slots() == 4);
    const auto basis = full_basis(s);
    CHECK(basis.size() == 16);
    CHECK(check_car(s, all_pairs(s), basis) <= 1e-14);
  }

  TEST_CASE("Clifford zero modes in the R,R torus") {
    FockSpace s(SectorConfig::torus(Boundary::R, Boundary::R, 3, HalfInt::from_int(1),
                                    HalfInt::from_int(1)));
    CHECK(s.num_generators() == 3);
    CHECK(s.spinor_dim() == 2);
    std::vector<std::pair<ModeLabel, ModeLabel>> pairs;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        pairs.emplace_back(ModeLabel::torus(i, {}, {}), ModeLabel::torus(j, {}, {}));
    auto basis = s.enumerate({}, 2, HalfInt::from_int(1));
    CHECK(check_car(s, pairs, basis) <= 1e-14);
    CHECK(check_car(s, all_pairs(s), s.enumerate({}, 1, HalfInt::from_int(1))) <= 1e-14);
  }

  TEST_CASE("even zero-mode count") {
    FockSpace s(SectorConfig::torus(Boundary::R, Boundary::R, 4, HalfInt::from_int(1),
                                    HalfInt::from_int(1)));
    CHECK(s.spinor_dim() == 4);
    CHECK(check_car(s, all_pairs(s), s.enumerate({}, 1, HalfInt::from_int(1))) <= 1e-14);
  }

  TEST_CASE("sphere R CAR carries (-1)^m") {
    FockSpace s(SectorConfig::sphere(Boundary::R, 1, HalfInt::from_int(2)));
    CHECK(s.num_generators() == 3);
    CHECK(s.num_slots() == 3);
    const ModeLabel x = ModeLabel::sphere(0, HalfInt::from_int(1), HalfInt::from_int(1));
    const ModeLabel y = ModeLabel::sphere(0, HalfInt::from_int(1), HalfInt::from_int(-1));
    CHECK(s.anticommutator(x, y) == -1.0);
    CHECK(check_car(s, all_pairs(s), full_basis(s)) <= 1e-14);
  }

  TEST_CASE("sphere NS CAR") {
    FockSpace s(SectorConfig::sphere(Boundary::NS, 2, h3));
    CHECK(s.num_generators() == 0);
    CHECK(check_car(s, all_pairs(s), s.enumerate({}, 2, HalfInt::from_int(3))) <= 1e-14);
  }

  TEST_CASE("creation operator is the matrix adjoint") {
    for (const SectorConfig& cfg :
         {SectorConfig::torus(Boundary::NS, Boundary::R, 1, h1, HalfInt::from_int(1)),
          SectorConfig::torus(Boundary::R, Boundary::R, 3, HalfInt::from_int(1), HalfInt::from_int(1)),
          SectorConfig::sphere(Boundary::R, 1, HalfInt::from_int(2)),
          SectorConfig::sphere(Boundary::NS, 1, h3)}) {
      FockSpace s(cfg);
      const auto basis = s.enumerate({}, 3, HalfInt::from_int(100));
      for (const auto& x : s.modes()) {
        const Eigen::MatrixXcd a = mode_operator(s, x).matrix(basis);
        const Eigen::MatrixXcd c = creator(s, x).matrix(basis);
        CHECK((c - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
      }
    }
  }

  TEST_CASE("normal ordering annihilates the NS vacuum") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 1, h1, h1));
    const ModeLabel up = ModeLabel::torus(0, h1, h1);
    const ModeLabel dn = ModeLabel::torus(0, -h1, -h1);
    const FockState vac = s.vacuum_states()[0];
    CHECK(normal_ordered_pair(s, up, dn).apply(vac).empty());
    CHECK(normal_ordered_pair(s, dn, up).apply(vac).empty());
    CHECK(mode_operator(s, dn).apply(vac).size() == 1);
    CHECK(mode_operator(s, up).apply(vac).empty());
    Operator plain(s);
    plain.add_product(1.0, up, dn);
    CHECK(plain.apply(vac).amplitude(vac) == cplx(1.0));
  }

  TEST_CASE("zero-mode bilinear has no vacuum expectation") {
    FockSpace s(SectorConfig::torus(Boundary::R, Boundary::R, 2, HalfInt::from_int(1),
                                    HalfInt::from_int(1)));
    const ModeLabel g0 = ModeLabel::torus(0, {}, {});
    const ModeLabel g1 = ModeLabel::torus(1, {}, {});
    for (const auto& v : s.vacuum_states()) {
      CHECK(normal_ordered_pair(s, g0, g0).apply(v).empty());
      const StateVector r = normal_ordered_pair(s, g0, g1).apply(v);
      CHECK(std::abs(r.amplitude(v)) == doctest::Approx(0.5));
      CHECK(std::abs(r.amplitude(v).real()) <= 1e-16);
    }
  }

  TEST_CASE("rendering") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 2, h1, h1));
    Operator op(s);
    op.add_product(1.0, ModeLabel::torus(0, -h1, -h1), ModeLabel::torus(1, -h1, h1));
    const auto r = op.apply(s.vacuum_states()[0]).sorted();
    REQUIRE(r.size() == 1);
    CHECK(s.render(r[0].first) == "|σ=0; (1,-1/2,-1/2),(2,-1/2,1/2)⟩");
    CHECK(s.render(s.vacuum_states()[0]) == "|σ=0;⟩");
  }

  TEST_CASE("grading") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::NS, 1, h3, h3));
    FockState st = s.vacuum_states()[0];
    cplx amp = 1.0;
    s.apply(s.resolve(ModeLabel::torus(0, -h3, h1)), st, amp);
    s.apply(s.resolve(ModeLabel::torus(0, -h1, h1)), st, amp);
    const auto [level, charge] = s.grade(st);
    CHECK(level.twice() == 4);
    CHECK(charge.twice() == 2);
  }

  TEST_CASE("invalid modes") {
    FockSpace s(SectorConfig::torus(Boundary::NS, Boundary::R, 1, h1, HalfInt::from_int(1)));
    CHECK_THROWS_AS(s.resolve(ModeLabel::torus(0, h3, {})), CutoffError);
    CHECK_THROWS_AS(s.resolve(ModeLabel::torus(0, h1, h1)), InvalidArgument);
    CHECK_THROWS_AS(s.resolve(ModeLabel::torus(1, h1, {})), InvalidArgument);
    CHECK_THROWS_AS(SectorConfig::torus(Boundary::R, Boundary::R, 1, h1, h1).validate(),
                    InvalidArgument);
    CHECK_THROWS_AS(SectorConfig::sphere(Boundary::NS, 1, HalfInt::from_int(2)).validate(),
                    InvalidArgument);
  }
}
