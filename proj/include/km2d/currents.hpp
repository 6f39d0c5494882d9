// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/fock.hpp"
#include "km2d/harmonics.hpp"
#include "km2d/lie_core.hpp"

#include <map>
#include <string>
#include <tuple>

namespace km2d {

/// Which current and which mode. Torus modes are (m, p); sphere modes (l, m).
struct CurrentSpec {
  enum class Kind { T, L };
  Kind kind = Kind::L;
  int a = 0;  // generator index for T (0-based)
  int m = 0;  // z-mode (torus) / azimuthal index (sphere)
  int p = 0;  // angular mode (torus)
  int l = 0;  // degree (sphere)
  double eps = 0.0;

  static CurrentSpec torus_T(int a, int m, int p, double eps = 0.0) {
    return {Kind::T, a, m, p, 0, eps};
  }
  static CurrentSpec torus_L(int m, int p, double eps = 0.0) { return {Kind::L, 0, m, p, 0, eps}; }
  static CurrentSpec sphere_T(int a, int l, int m) { return {Kind::T, a, m, 0, l, 0.0}; }
  static CurrentSpec sphere_L(int l, int m) { return {Kind::L, 0, m, 0, l, 0.0}; }

  /// "T1[1,0]", "L[0,0]"; generator index printed 1-based; torus shows
  /// [m,p], sphere [l,m].
  std::string str(Geometry g) const;
  auto operator<=>(const CurrentSpec&) const = default;
};

/// lambda: 1/16 for an R z-sector, 0 for NS.
double vacuum_shift(Boundary z_sector);

/// w_eps(q) = e^{-eps (|q| - 1/2)}.
double eps_weight(HalfInt q, double eps);

/// T^a_{m,p} = (i/2) M^a_ij sum w(q) w(p-q) :b^i_{n,q} b^j_{m-n,p-q}:
Operator torus_T(const FockSpace& space, const LieAlgebraRep& rep, int a, int m, int p,
                 double eps = 0.0);

/// L_{m,p} = 1/2 sum_i sum (-n) w(q) w(p-q) :b^i_{n,q} b^i_{m-n,p-q}: + lambda d delta_{m0} delta_{p0}
Operator torus_L(const FockSpace& space, int m, int p, double eps = 0.0);

/// Projections (1/2) int Q_{l,m} J^{eta1}_{l1 m1} J^{eta2}_{l2 m2} du, cached.
class NsProjectionCache {
 public:
  double operator()(int l, HalfInt l1, HalfInt m1, int eta1, HalfInt l2, HalfInt m2, int eta2);

 private:
  std::map<std::tuple<int, int, int, int, int, int, int>, double> values_;
};

/// Sphere currents. R: coefficients from the structure table (throws
/// TableCoverageError when it does not reach max(l, L_cut)). NS:
/// coefficients (1/2) x NS projection; the table is not consulted.
Operator sphere_T(const FockSpace& space, const LieAlgebraRep& rep, int a, int l, int m,
                  const StructureTable& table, NsProjectionCache* ns_cache = nullptr);
Operator sphere_L(const FockSpace& space, int l, int m, const StructureTable& table,
                  NsProjectionCache* ns_cache = nullptr);

/// Dispatch on geometry and kind.
Operator build_current(const FockSpace& space, const LieAlgebraRep& rep, const CurrentSpec& spec,
                       const StructureTable* table = nullptr, NsProjectionCache* ns_cache = nullptr);

/// Adds coef * :b_x b_y: to op.
void add_normal_ordered(Operator& op, cplx coef, const ModeLabel& x, const ModeLabel& y);

}  // namespace km2d
