// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/regulator.hpp"

#include "km2d/errors.hpp"
#include "km2d/harmonics.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace km2d {

double hurwitz_zeta_at_zero(double a) { return 0.5 - a; }

HeatSum HeatSum::tail(double step, double offset, double weight) {
  HeatSum s;
  s.tails.push_back({weight, step, offset});
  return s;
}

long double HeatSum::evaluate(long double eps) const {
  long double v = 0.0L;
  for (const Term& t : terms) v += t.weight * std::exp(-2.0L * eps * t.exponent);
  for (const Tail& t : tails)
    v += t.weight * std::exp(-2.0L * eps * t.offset) / -std::expm1(-2.0L * eps * t.step);
  return v;
}

long double HeatSum::evaluate_numeric(long double eps) const {
  long double v = 0.0L;
  for (const Term& t : terms) v += t.weight * std::exp(-2.0L * eps * t.exponent);
  for (const Tail& t : tails) {
    long double s = 0.0L;
    for (long k = 0;; ++k) {
      const long double e = std::exp(-2.0L * eps * (t.step * k + t.offset));
      s += e;
      if (e < 1e-30L) break;
    }
    v += t.weight * s;
  }
  return v;
}

LaurentData heat_sum_finite_part(const HeatSum& s) {
  LaurentData out;
  for (const auto& t : s.terms) out.finite += t.weight;
  for (const auto& t : s.tails) {
    if (!(t.step > 0)) throw InvalidArgument("heat sum step must be positive");
    out.pole += t.weight / (2.0 * t.step);
    out.finite += t.weight * (0.5 - t.offset / t.step);
  }
  return out;
}

double richardson_finite_part(const HeatSum& s, double eps0, int levels) {
  if (levels < 2) throw InvalidArgument("Richardson needs at least two levels");
  // r[i] holds the current column, built from eps0 / 2^i.
  std::vector<long double> r(levels);
  for (int i = 0; i < levels; ++i) r[i] = s.evaluate_numeric(eps0 / std::ldexp(1.0L, i));
  // Powers of eps removed in turn: -1, 1, 2, 3, ...
  for (int col = 1; col < levels; ++col) {
    const int p = col == 1 ? -1 : col - 1;
    const long double f = std::ldexp(1.0L, p);
    for (int i = 0; i + col < levels; ++i) r[i] = (f * r[i + 1] - r[i]) / (f - 1.0L);
  }
  return static_cast<double>(r[0]);
}

double torus_delta_eps(double theta, double eps, Boundary sector) {
  if (!(eps > 0)) throw InvalidArgument("eps must be positive");
  using C = std::complex<double>;
  const C z = std::exp(C(-2.0 * eps, -theta));
  if (sector == Boundary::NS) return 2.0 * (std::exp(C(0.0, -0.5 * theta)) / (1.0 - z)).real();
  return std::exp(eps) * (1.0 + 2.0 * (z / (1.0 - z)).real());
}

std::string DeltaDescriptor::str() const {
  std::string s = to_string(geometry) + " " + to_string(sector);
  if (geometry == Geometry::Sphere) s += " m=" + std::to_string(m);
  return s;
}

HeatSum delta_heat_sum(const DeltaDescriptor& desc) {
  if (desc.geometry == Geometry::Torus) {
    HeatSum s;
    if (desc.sector == Boundary::NS) {
      // n = +-(k + 1/2): exponent k
      s.tails = {{1.0, 1.0, 0.0}, {1.0, 1.0, 0.0}};
    } else {
      // n = 0 separately, n = +-(k + 1): exponent k + 1/2
      s.terms = {{1.0, -0.5}};
      s.tails = {{1.0, 1.0, 0.5}, {1.0, 1.0, 0.5}};
    }
    return s;
  }
  if (desc.sector == Boundary::NS)
    throw UnresolvedPrescription(
        "sphere NS: the offset that fixes the regularised delta(0) is not determined");
  const int am = std::abs(desc.m);
  const double l0 = am % 2;
  // l = l0 + 2k, exponent l + |m| + a_m
  return HeatSum::tail(2.0, l0 + am + solve_a_m(desc.m), 4.0 / std::numbers::pi);
}

double delta_reg_zero(const DeltaDescriptor& desc) {
  return heat_sum_finite_part(delta_heat_sum(desc)).finite;
}

double solve_a_m(int m) {
  // (4/pi)(1/2 - (l0 + |m| + a)/2) = 1, linear in a.
  const int am = std::abs(m);
  const double l0 = am % 2;
  return 1.0 - std::numbers::pi / 2.0 - l0 - am;
}

namespace {
double c_m_partial(int m, int l_max) {
  const int am = std::abs(m);
  const std::vector<double> q = legendre_Q_column(l_max, am, 0.0);
  const double asym = 4.0 / std::numbers::pi;
  double s = 0.0;
  for (int l = am % 2; l <= l_max; l += 2) {
    const double v = l >= am ? q[l - am] : 0.0;
    s += v * v - asym;
  }
  return s;
}
}  // namespace

double sphere_constant_c_m(int m, int l_max) {
  if (l_max % 2 != std::abs(m) % 2) ++l_max;
  const double a = c_m_partial(m, l_max);
  const double b = c_m_partial(m, 2 * l_max + (std::abs(m) % 2 ? 1 : 0));
  return 2.0 * b - a;
}

double sphere_delta_eps_partial(int m, double eps, int l_max) {
  const int am = std::abs(m);
  const double a_m = solve_a_m(m);
  const std::vector<double> q = legendre_Q_column(l_max, am, 0.0);
  double s = 0.0;
  for (int l = am; l <= l_max; ++l) s += std::exp(-2.0 * eps * (l + am + a_m)) * q[l - am] * q[l - am];
  return s;
}

}  // namespace km2d
