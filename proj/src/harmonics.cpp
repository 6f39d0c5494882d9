// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/harmonics.hpp"

#include "km2d/errors.hpp"

#include <cmath>
#include <string>

namespace km2d {

namespace {

void require_legendre_indices(int l, int m) {
  if (l < 0 || std::abs(m) > l)
    throw InvalidArgument("Legendre index needs l >= |m|, got l=" + std::to_string(l) +
                          " m=" + std::to_string(m));
}

}  // namespace

std::vector<double> legendre_Q_column(int l_max, int m, double u) {
  const int am = std::abs(m);
  require_legendre_indices(l_max, am);
  std::vector<double> out(l_max - am + 1);
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  double pmm = 1.0;
  for (int k = 1; k <= am; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  out[0] = pmm;
  if (l_max > am) out[1] = std::sqrt(2.0 * am + 3.0) * u * pmm;
  for (int l = am + 2; l <= l_max; ++l) {
    const double l2 = double(l) * l, m2 = double(am) * am;
    const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
    const double b = std::sqrt((2.0 * l + 1.0) * (l - 1.0 - am) * (l - 1.0 + am) /
                               ((2.0 * l - 3.0) * (l2 - m2)));
    out[l - am] = a * u * out[l - am - 1] - b * out[l - am - 2];
  }
  if (m < 0 && (am % 2 == 1))
    for (double& v : out) v = -v;
  return out;
}

double legendre_Q(int l, int m, double u) {
  require_legendre_indices(l, m);
  return legendre_Q_column(l, m, u).back();
}

double legendre_Q_rodrigues(int l, int m, double u) {
  require_legendre_indices(l, m);
  using ld = long double;
  const int order = l + m;
  // d^order/du^order (u^2 - 1)^l, term by term.
  ld deriv = 0.0L;
  ld binom = 1.0L;  // C(l, k)
  for (int k = 0; k <= l; ++k) {
    if (k > 0) binom = binom * (l - k + 1) / k;
    const int power = 2 * k;
    if (power >= order) {
      ld falling = 1.0L;
      for (int j = 0; j < order; ++j) falling *= (power - j);
      const ld sign = ((l - k) % 2 == 0) ? 1.0L : -1.0L;
      deriv += sign * binom * falling * std::pow(static_cast<ld>(u), power - order);
    }
  }
  ld pref = std::sqrt(static_cast<ld>(2 * l + 1));
  // sqrt((l-m)!/(l+m)!) / (2^l l!)
  ld log_ratio = 0.5L * (std::lgamma(static_cast<ld>(l - m + 1)) - std::lgamma(static_cast<ld>(l + m + 1))) -
                 l * std::log(2.0L) - std::lgamma(static_cast<ld>(l + 1));
  pref *= std::exp(log_ratio);
  if (m % 2 != 0) pref = -pref;
  const ld one_minus = 1.0L - static_cast<ld>(u) * u;
  if (m < 0 && one_minus <= 0.0L) return 0.0;
  const ld envelope = std::pow(one_minus, static_cast<ld>(m) / 2.0L);
  return static_cast<double>(pref * envelope * deriv);
}

double jacobi_P(int n, double a, double b, double u) {
  if (n < 0) throw InvalidArgument("Jacobi degree must be non-negative");
  double p0 = 1.0;
  if (n == 0) return p0;
  double p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (u - 1.0);
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * u + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi_Q(HalfInt l, HalfInt m, int eta, double u) {
  if (l.is_integer() || m.is_integer())
    throw InvalidArgument("NS basis indices must be half-odd-integers");
  if (eta != 1 && eta != -1) throw InvalidArgument("eta must be +1 or -1");
  const HalfInt n_half = l - m.abs();
  if (n_half.twice() < 0) throw InvalidArgument("NS basis needs l >= |m|");
  const int n = n_half.as_int();
  const int alpha = std::abs(m.twice() - eta) / 2;
  const int beta = std::abs(m.twice() + eta) / 2;
  // h_n = 2^{a+b+1}/(2n+a+b+1) Gamma(n+a+1)Gamma(n+b+1)/(Gamma(n+a+b+1) n!)
  const double log_h = (alpha + beta + 1.0) * std::log(2.0) - std::log(2.0 * n + alpha + beta + 1.0) +
                       std::lgamma(n + alpha + 1.0) + std::lgamma(n + beta + 1.0) -
                       std::lgamma(n + alpha + beta + 1.0) - std::lgamma(n + 1.0);
  const double norm = std::sqrt(2.0) * std::exp(-0.5 * log_h);
  const double envelope = std::pow(std::max(0.0, 1.0 - u), 0.5 * alpha) *
                          std::pow(std::max(0.0, 1.0 + u), 0.5 * beta);
  return norm * envelope * jacobi_P(n, alpha, beta, u);
}

double ns_projection(int l, HalfInt l1, HalfInt m1, int eta1, HalfInt l2, HalfInt m2, int eta2) {
  const HalfInt m = m1 + m2;
  if (!m.is_integer()) throw InvalidArgument("NS bilinear must carry integer z-mode");
  const int mi = m.as_int();
  if (std::abs(mi) > l) return 0.0;
  const int alpha1 = std::abs(m1.twice() - eta1) / 2, beta1 = std::abs(m1.twice() + eta1) / 2;
  const int alpha2 = std::abs(m2.twice() - eta2) / 2, beta2 = std::abs(m2.twice() + eta2) / 2;
  const double a = ((alpha1 + alpha2 + std::abs(mi)) % 2 == 1) ? 0.5 : 0.0;
  const double b = ((beta1 + beta2 + std::abs(mi)) % 2 == 1) ? 0.5 : 0.0;
  const int l_sum = (l1.twice() + l2.twice()) / 2 + l;  // integer: l1 + l2 is an integer
  const int nodes = (l_sum + 4) / 2 + 4;
  const QuadratureRule rule = gauss_jacobi(nodes, a, b);
  double acc = 0.0;
  for (size_t k = 0; k < rule.nodes.size(); ++k) {
    const double u = rule.nodes[k];
    const double weight = std::pow(1.0 - u, a) * std::pow(1.0 + u, b);
    acc += rule.weights[k] * legendre_Q(l, mi, u) * jacobi_Q(l1, m1, eta1, u) *
           jacobi_Q(l2, m2, eta2, u) / weight;
  }
  return 0.5 * acc;
}

double delta_partial_residual(int m, int test_degree, int l_max) {
  const int am = std::abs(m);
  if (test_degree > l_max)
    throw InvalidArgument("test function degree " + std::to_string(test_degree) +
                          " exceeds the partial-sum degree " + std::to_string(l_max));
  if (test_degree < am) throw InvalidArgument("test function needs l' >= |m|");
  const QuadratureRule rule = gauss_legendre(l_max + 2);
  const size_t n = rule.nodes.size();
  std::vector<std::vector<double>> cols(n);
  for (size_t k = 0; k < n; ++k) cols[k] = legendre_Q_column(l_max, m, rule.nodes[k]);
  double worst = 0.0;
  for (size_t j = 0; j < n; ++j) {
    double projected = 0.0;
    for (size_t k = 0; k < n; ++k) {
      double kernel = 0.0;
      for (int l = am; l <= l_max; ++l) kernel += cols[j][l - am] * cols[k][l - am];
      projected += 0.5 * rule.weights[k] * kernel * cols[k][test_degree - am];
    }
    worst = std::max(worst, std::abs(projected - cols[j][test_degree - am]));
  }
  return worst;
}

}  // namespace km2d
