// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/fock.hpp"

#include <string>
#include <vector>

namespace km2d {

/// zeta(0, a) = 1/2 - a.
double hurwitz_zeta_at_zero(double a);

/// Sum of weighted exponentials in a regulator eps:
///   sum_j w_j e^{-2 eps x_j}  +  sum_t w_t sum_{k>=0} e^{-2 eps (step_t k + offset_t)}.
struct HeatSum {
  struct Term {
    double weight = 1.0;
    double exponent = 0.0;
  };
  struct Tail {
    double weight = 1.0;
    double step = 1.0;
    double offset = 0.0;
  };
  std::vector<Term> terms;
  std::vector<Tail> tails;

  static HeatSum tail(double step, double offset, double weight = 1.0);

  /// Closed-form value at eps > 0.
  long double evaluate(long double eps) const;
  /// Value with the tails summed term by term until they drop below 1e-30.
  long double evaluate_numeric(long double eps) const;
};

struct LaurentData {
  double pole = 0.0;    // coefficient of 1/eps
  double finite = 0.0;  // eps^0 coefficient
};

/// Laurent data of a HeatSum at eps -> 0. A tail contributes
/// pole 1/(2 step) and finite part 1/2 - offset/step. Throws InvalidArgument
/// for step <= 0.
LaurentData heat_sum_finite_part(const HeatSum& s);

/// Finite part from numerical sums at eps0, eps0/2, ..., eps0/2^(levels-1),
/// removing the 1/eps pole and the eps, eps^2, ... corrections by repeated
/// Richardson steps.
double richardson_finite_part(const HeatSum& s, double eps0, int levels = 10);

/// delta_eps(theta) = sum_n e^{-2 eps (|n| - 1/2)} e^{-i n theta} over the
/// sector lattice, in closed form. Throws InvalidArgument for eps <= 0.
double torus_delta_eps(double theta, double eps, Boundary sector);

/// Where a regularised delta(0) is requested.
struct DeltaDescriptor {
  Geometry geometry = Geometry::Torus;
  Boundary sector = Boundary::NS;
  int m = 0;  // sphere azimuthal index
  std::string str() const;
};

/// The heat sum representing delta_eps(0) (torus) or its divergent
/// asymptotic part (sphere R, with a_m from solve_a_m).
HeatSum delta_heat_sum(const DeltaDescriptor& desc);

/// Finite part of delta_eps(0). Sphere NS throws UnresolvedPrescription.
double delta_reg_zero(const DeltaDescriptor& desc);

/// Offset constant a_m for sphere R fermions such that the finite part of
/// (4/pi) sum_{l = m mod 2} e^{-2 eps (l + |m| + a_m)} equals 1.
double solve_a_m(int m);

/// C_m = sum over l = m mod 2 of (Q_lm(0)^2 - 4/pi), with the O(1/l^2) tail
/// beyond l_max estimated by Richardson in l_max.
double sphere_constant_c_m(int m, int l_max = 4000);

/// sum_{l <= l_max} e^{-2 eps (l + |m| + a_m)} Q_lm(0)^2.
double sphere_delta_eps_partial(int m, double eps, int l_max);

}  // namespace km2d
