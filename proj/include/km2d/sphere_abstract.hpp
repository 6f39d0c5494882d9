// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/harmonics.hpp"
#include "km2d/lie_core.hpp"

#include <array>
#include <complex>
#include <map>
#include <string>

namespace km2d {

/// Sphere algebra in the free module spanned by L_{l,m}, T^a_{l,m} and a
/// central element K, with brackets
///   [L_1, L_2]     = (m1-m2) sum_l3 c_{12}^{l3} L_{l3} + (-1)^{m1} (c/12) m1(m1^2-1) d_{12} K
///   [T^a_1, T^b_2] = i f^{ab}_c sum_l3 c_{12}^{l3} T^c_{l3} + (-1)^{m1} k m1 delta^{ab} d_{12} K
///   [L_1, T^a_2]   = -m2 sum_l3 c_{12}^{l3} T^a_{l3}
/// where d_{12} = delta_{l1 l2} delta_{m1+m2} and c_{12}^{l3} = c_{l1 m1 l2 m2}^{l3, m1+m2}.
class SphereAlgebra {
 public:
  struct Gen {
    int kind;  // 0 = L, 1 = T, 2 = K
    int a, l, m;
    auto operator<=>(const Gen&) const = default;
  };
  using Element = std::map<Gen, std::complex<double>>;

  SphereAlgebra(const StructureTable& table, const LieAlgebraRep& rep, double c, double k);

  static Gen L(int l, int m) { return {0, 0, l, m}; }
  static Gen T(int a, int l, int m) { return {1, a, l, m}; }

  Element bracket(const Gen& x, const Gen& y) const;
  Element bracket(const Element& x, const Element& y) const;

  /// max |coefficient| of [[x,y],z] + [[y,z],x] + [[z,x],y].
  double jacobi(const Gen& x, const Gen& y, const Gen& z) const;

 private:
  const StructureTable& table_;
  LieAlgebraRep rep_;
  double c_, k_;
};

struct JacobiReport {
  int l_probe = 0;
  int table_l_max = 0;
  long triples = 0;
  std::map<std::string, double> max_by_family;  // "LLL", "LLT", "LTT", "TTT"
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Jacobi residuals over all unordered generator triples with l <= l_probe.
/// Throws TableCoverageError when the table is below 3 l_probe.
JacobiReport check_sphere_abstract(const StructureTable& table, const LieAlgebraRep& rep,
                                   int l_probe, double tol);

}  // namespace km2d
