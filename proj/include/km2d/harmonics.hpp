// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/half_int.hpp"

#include <iosfwd>
#include <vector>

namespace km2d {

/// Selects the serial reference path or the OpenMP kernel for the
/// data-parallel loops (structure tables, window commutators).
enum class Execution { Serial, Parallel };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1,1] (exact to degree 2n-1).
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for the weight (1-u)^a (1+u)^b, a,b > -1.
/// Golub-Welsch on the Jacobi matrix.
QuadratureRule gauss_jacobi(int n, double a, double b);

/// Orthonormal associated Legendre function,
/// Q_lm = sqrt(2l+1) sqrt((l-m)!/(l+m)!) P_l^m with the Condon-Shortley phase,
/// normalised so that (1/2) int_{-1}^{1} Q_lm Q_l'm du = delta_ll'.
/// Negative m satisfies Q_{l,-m} = (-1)^m Q_{lm}. Stable three-term recurrence.
double legendre_Q(int l, int m, double u);

/// Same function evaluated from the Rodrigues formula in extended precision.
/// Accurate for l below ~20; kept as an independent route for cross-checks.
double legendre_Q_rodrigues(int l, int m, double u);

/// Values Q_{l,m}(u) for l = |m| .. l_max in one recurrence sweep.
std::vector<double> legendre_Q_column(int l_max, int m, double u);

/// Jacobi polynomial P_n^{(a,b)}(u) by the three-term recurrence.
double jacobi_P(int n, double a, double b, double u);

/// NS basis function on the open interval (-1,1):
/// N (1-u)^{alpha/2} (1+u)^{beta/2} P_{l-|m|}^{(alpha,beta)}(u) with
/// alpha = |m - eta/2|, beta = |m + eta/2|, orthonormal for (1/2) int du.
/// l and m are half-odd-integers, l - |m| a non-negative integer, eta = +-1.
double jacobi_Q(HalfInt l, HalfInt m, int eta, double u);

/// (1/2) int Q_{l,m} J^{eta1}_{l1,m1} J^{eta2}_{l2,m2} du with m = m1 + m2,
/// evaluated with a Gauss-Jacobi rule that absorbs the square-root endpoint
/// factors, so the remaining integrand is polynomial.
double ns_projection(int l, HalfInt l1, HalfInt m1, int eta1, HalfInt l2, HalfInt m2, int eta2);

/// c_{l1,m1,l2,m2}^{l3,m1+m2} = (1/2) int Q_{l1 m1} Q_{l2 m2} Q_{l3,m1+m2} du,
/// the expansion coefficients of products of the orthonormal basis.
class StructureTable {
 public:
  StructureTable() = default;

  /// Builds every coefficient with l_i <= l_max, |m_i| <= l_i.
  static StructureTable build(int l_max, Execution exec = Execution::Parallel);

  int l_max() const { return l_max_; }

  /// Coefficient, zero when an index is out of range or a selection rule
  /// forbids it. Throws TableCoverageError when a degree exceeds l_max.
  double operator()(int l1, int m1, int l2, int m2, int l3) const;

  /// true when (l1,l2,l3) pass the triangle and even-sum rules.
  static bool allowed(int l1, int l2, int l3);

  /// CSV with header l1,m1,l2,m2,l3,m3,value; one row per allowed entry,
  /// values printed with 17 significant digits.
  void write_csv(std::ostream& out) const;

  const std::vector<double>& raw() const { return values_; }

 private:
  size_t index(int l1, int m1, int l2, int m2, int l3) const;

  int l_max_ = -1;
  std::vector<double> values_;
};

/// Max over l_a, l_b, l_c <= l_probe of the difference between the two
/// double expansions of (Q_a Q_b) Q_c and Q_a (Q_b Q_c). Needs l_max >= 3 l_probe.
double associativity_residual(const StructureTable& t, int l_probe);

/// Max over quadrature nodes u of
/// |(1/2) int [sum_{l<=l_max} Q_lm(u) Q_lm(v)] Q_{l'm}(v) dv - Q_{l'm}(u)|.
/// Throws InvalidArgument when l' > l_max or l' < |m|.
double delta_partial_residual(int m, int test_degree, int l_max);

}  // namespace km2d
