// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/currents.hpp"

#include "km2d/errors.hpp"

#include <cmath>
#include <sstream>

namespace km2d {

namespace {

const cplx kHalfI(0.0, 0.5);

std::vector<HalfInt> lattice_points(HalfInt cut, Boundary b) {
  std::vector<HalfInt> out;
  const int parity = b == Boundary::R ? 0 : 1;
  for (int t = -cut.twice(); t <= cut.twice(); ++t)
    if (std::abs(t) % 2 == parity) out.push_back(HalfInt::from_twice(t));
  return out;
}

void require_torus(const FockSpace& s) {
  if (s.geometry() != Geometry::Torus) throw InvalidArgument("torus current on a sphere space");
}

void require_sphere(const FockSpace& s) {
  if (s.geometry() != Geometry::Sphere) throw InvalidArgument("sphere current on a torus space");
}

// All (x, y) splittings of a torus bilinear mode (m, p) with both factors inside the cutoffs.
template <class F>
void for_each_torus_split(const FockSpace& s, int m, int p, F&& f) {
  const SectorConfig& c = s.config();
  const HalfInt hm = HalfInt::from_int(m), hp = HalfInt::from_int(p);
  for (HalfInt n : lattice_points(c.m_cut, c.z_sector)) {
    if ((hm - n).abs() > c.m_cut) continue;
    for (HalfInt q : lattice_points(c.p_cut, c.angular_sector)) {
      if ((hp - q).abs() > c.p_cut) continue;
      f(n, q, hm - n, hp - q);
    }
  }
}

}  // namespace

std::string CurrentSpec::str(Geometry g) const {
  std::ostringstream os;
  if (kind == Kind::T)
    os << 'T' << a + 1;
  else
    os << 'L';
  if (g == Geometry::Torus)
    os << '[' << m << ',' << p << ']';
  else
    os << '[' << l << ',' << m << ']';
  return os.str();
}

double vacuum_shift(Boundary z_sector) { return z_sector == Boundary::R ? 1.0 / 16.0 : 0.0; }

double eps_weight(HalfInt q, double eps) {
  return eps == 0.0 ? 1.0 : std::exp(-eps * (q.abs().value() - 0.5));
}

void add_normal_ordered(Operator& op, cplx coef, const ModeLabel& x, const ModeLabel& y) {
  switch (op.space().resolve(x).kind) {
    case Action::Kind::Annihilate:
      op.add_product(-coef, y, x);
      break;
    case Action::Kind::Create:
      op.add_product(coef, x, y);
      break;
    case Action::Kind::Clifford:
      op.add_product(0.5 * coef, x, y);
      op.add_product(-0.5 * coef, y, x);
      break;
  }
}

Operator torus_T(const FockSpace& space, const LieAlgebraRep& rep, int a, int m, int p,
                 double eps) {
  require_torus(space);
  if (a < 0 || a >= rep.dim_g) throw InvalidArgument("generator index out of range");
  if (rep.d != space.d()) throw InvalidArgument("representation dimension differs from d");
  const Eigen::MatrixXd& M = rep.generators[a];
  Operator op(space);
  for_each_torus_split(space, m, p, [&](HalfInt n, HalfInt q, HalfInt n2, HalfInt q2) {
    const double w = eps_weight(q, eps) * eps_weight(q2, eps);
    for (int i = 0; i < rep.d; ++i)
      for (int j = 0; j < rep.d; ++j) {
        if (M(i, j) == 0.0) continue;
        add_normal_ordered(op, kHalfI * M(i, j) * w, ModeLabel::torus(i, n, q),
                           ModeLabel::torus(j, n2, q2));
      }
  });
  return op;
}

Operator torus_L(const FockSpace& space, int m, int p, double eps) {
  require_torus(space);
  Operator op(space);
  for_each_torus_split(space, m, p, [&](HalfInt n, HalfInt q, HalfInt n2, HalfInt q2) {
    if (n.twice() == 0) return;
    const double w = eps_weight(q, eps) * eps_weight(q2, eps);
    for (int i = 0; i < space.d(); ++i)
      add_normal_ordered(op, -0.5 * n.value() * w, ModeLabel::torus(i, n, q),
                         ModeLabel::torus(i, n2, q2));
  });
  if (m == 0 && p == 0) op.add_constant(vacuum_shift(space.config().z_sector) * space.d());
  return op;
}

double NsProjectionCache::operator()(int l, HalfInt l1, HalfInt m1, int eta1, HalfInt l2,
                                     HalfInt m2, int eta2) {
  const auto key = std::make_tuple(l, l1.twice(), m1.twice(), eta1, l2.twice(), m2.twice(), eta2);
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  const double v = ns_projection(l, l1, m1, eta1, l2, m2, eta2);
  values_.emplace(key, v);
  return v;
}

namespace {

// Sphere bilinear with kernel(i, j) * coefficient(x, y) * weight(m1); weight
// carries (-m1) for L and 1 for T.
template <class Kernel, class Weight>
Operator sphere_bilinear(const FockSpace& space, int l, int m, const StructureTable& table,
                         NsProjectionCache* ns_cache, Kernel&& kernel, Weight&& weight) {
  require_sphere(space);
  const SectorConfig& c = space.config();
  if (l < std::abs(m)) throw InvalidArgument("sphere mode requires l >= |m|");
  NsProjectionCache local;
  NsProjectionCache& cache = ns_cache ? *ns_cache : local;
  Operator op(space);
  if (c.z_sector == Boundary::R) {
    const int lc = c.l_cut.as_int();
    const int need = std::max(l, lc);
    if (need > table.l_max()) throw TableCoverageError(need);
    for (int l1 = 0; l1 <= lc; ++l1)
      for (int m1 = -l1; m1 <= l1; ++m1) {
        const int m2 = m - m1;
        for (int l2 = std::abs(m2); l2 <= lc; ++l2) {
          const double cf = table(l1, m1, l2, m2, l);
          if (cf == 0.0) continue;
          const double w = weight(m1) * cf;
          if (w == 0.0) continue;
          for (int i = 0; i < space.d(); ++i)
            for (int j = 0; j < space.d(); ++j) {
              const cplx k = kernel(i, j);
              if (k == cplx(0.0)) continue;
              add_normal_ordered(op, k * w,
                                 ModeLabel::sphere(i, HalfInt::from_int(l1), HalfInt::from_int(m1)),
                                 ModeLabel::sphere(j, HalfInt::from_int(l2), HalfInt::from_int(m2)));
            }
        }
      }
  } else {
    const int tc = c.l_cut.twice();
    for (int tl1 = 1; tl1 <= tc; tl1 += 2)
      for (int tm1 = -tl1; tm1 <= tl1; tm1 += 2) {
        const int tm2 = 2 * m - tm1;
        for (int tl2 = std::abs(tm2); tl2 <= tc; tl2 += 2)
          for (int e1 : {-1, 1})
            for (int e2 : {-1, 1}) {
              const HalfInt l1 = HalfInt::from_twice(tl1), m1 = HalfInt::from_twice(tm1);
              const HalfInt l2 = HalfInt::from_twice(tl2), m2 = HalfInt::from_twice(tm2);
              const double cf = 0.5 * cache(l, l1, m1, e1, l2, m2, e2);
              if (cf == 0.0) continue;
              const double w = weight(m1.value()) * cf;
              if (w == 0.0) continue;
              for (int i = 0; i < space.d(); ++i)
                for (int j = 0; j < space.d(); ++j) {
                  const cplx k = kernel(i, j);
                  if (k == cplx(0.0)) continue;
                  add_normal_ordered(op, k * w, ModeLabel::sphere(i, l1, m1, e1),
                                     ModeLabel::sphere(j, l2, m2, e2));
                }
            }
      }
  }
  return op;
}

}  // namespace

Operator sphere_T(const FockSpace& space, const LieAlgebraRep& rep, int a, int l, int m,
                  const StructureTable& table, NsProjectionCache* ns_cache) {
  if (a < 0 || a >= rep.dim_g) throw InvalidArgument("generator index out of range");
  if (rep.d != space.d()) throw InvalidArgument("representation dimension differs from d");
  const Eigen::MatrixXd& M = rep.generators[a];
  return sphere_bilinear(
      space, l, m, table, ns_cache, [&](int i, int j) { return kHalfI * M(i, j); },
      [](double) { return 1.0; });
}

Operator sphere_L(const FockSpace& space, int l, int m, const StructureTable& table,
                  NsProjectionCache* ns_cache) {
  Operator op = sphere_bilinear(
      space, l, m, table, ns_cache, [](int i, int j) { return cplx(i == j ? 0.5 : 0.0); },
      [](double m1) { return -m1; });
  if (l == 0 && m == 0) op.add_constant(vacuum_shift(space.config().z_sector) * space.d());
  return op;
}

Operator build_current(const FockSpace& space, const LieAlgebraRep& rep, const CurrentSpec& spec,
                       const StructureTable* table, NsProjectionCache* ns_cache) {
  if (space.geometry() == Geometry::Torus) {
    return spec.kind == CurrentSpec::Kind::T ? torus_T(space, rep, spec.a, spec.m, spec.p, spec.eps)
                                             : torus_L(space, spec.m, spec.p, spec.eps);
  }
  static const StructureTable empty;
  const StructureTable& t = table ? *table : empty;
  return spec.kind == CurrentSpec::Kind::T ? sphere_T(space, rep, spec.a, spec.l, spec.m, t, ns_cache)
                                           : sphere_L(space, spec.l, spec.m, t, ns_cache);
}

}  // namespace km2d
