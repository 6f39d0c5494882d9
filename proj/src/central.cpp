// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/central.hpp"

#include "km2d/errors.hpp"

#include <cmath>
#include <sstream>

namespace km2d {

CentralMethod parse_central_method(const std::string& s) {
  if (s == "raw") return CentralMethod::Raw;
  if (s == "eps") return CentralMethod::Eps;
  if (s == "analytic") return CentralMethod::Analytic;
  throw InvalidArgument("unknown central method '" + s + "' (raw|eps|analytic)");
}

std::string to_string(CentralMethod m) {
  switch (m) {
    case CentralMethod::Raw: return "raw";
    case CentralMethod::Eps: return "eps";
    case CentralMethod::Analytic: return "analytic";
  }
  return "?";
}

std::string BracketRhs::str(Geometry g) const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [c, spec] : terms) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << 'i';
    os << ")*" << spec.str(g);
  }
  if (conjugate) {
    if (!first) os << " + ";
    os << central;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

namespace {

using Kind = CurrentSpec::Kind;

bool is_conjugate(const SectorConfig& cfg, const CurrentSpec& x, const CurrentSpec& y) {
  if (cfg.geometry == Geometry::Torus) return x.m + y.m == 0 && x.p + y.p == 0;
  return x.m + y.m == 0 && x.l == y.l;
}

// Internal overlap of the conjugate pair: torus 1, sphere (-1)^{m1}.
double overlap(const SectorConfig& cfg, const CurrentSpec& x) {
  return cfg.geometry == Geometry::Torus ? 1.0 : parity_sign(x.m);
}

// Kernel K_ij(n1) of the bilinear sum_{n1} K_ij :b^i_{n1} b^j_{.}:.
cplx kernel(const LieAlgebraRep& rep, Kind kind, int a, int i, int j, double n1) {
  if (kind == Kind::T) return cplx(0.0, 0.5) * rep.generators[a](i, j);
  return i == j ? cplx(-0.5 * n1) : cplx(0.0);
}

// F(n) = sum_ij K^X_ij(n) K^Y_ji(n-m) - K^X_ij(n) K^Y_ij(-n).
double wick_f(const LieAlgebraRep& rep, int d, Kind kx, int ax, Kind ky, int ay, int m, double n) {
  cplx s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const cplx kxij = kernel(rep, kx, ax, i, j, n);
      if (kxij == cplx(0.0)) continue;
      s += kxij * (kernel(rep, ky, ay, j, i, n - m) - kernel(rep, ky, ay, i, j, -n));
    }
  return s.real();
}

double lambda_part(Kind kx, Kind ky, int m, int d, Boundary z) {
  return (kx == Kind::L && ky == Kind::L) ? 2.0 * m * vacuum_shift(z) * d : 0.0;
}

// z-lattice points between -|m|-1 and |m|+1.
std::vector<HalfInt> z_points(int m, Boundary z) {
  std::vector<HalfInt> out;
  const int lim = 2 * (std::abs(m) + 1);
  for (int t = -lim; t <= lim; ++t)
    if ((std::abs(t) % 2 == 0) == (z == Boundary::R)) out.push_back(HalfInt::from_twice(t));
  return out;
}

// Ordering weight of a z-mode alone: 1 annihilating, 1/2 zero mode, 0 creating.
double g_z(HalfInt n) { return n.twice() > 0 ? 1.0 : n.twice() == 0 ? 0.5 : 0.0; }

// Same for a torus mode (n, q) with the p-order at n = 0.
double g_torus(HalfInt n, HalfInt q) {
  if (n.twice() != 0) return n.twice() > 0 ? 1.0 : 0.0;
  return q.twice() > 0 ? 1.0 : q.twice() == 0 ? 0.5 : 0.0;
}

void check_pair(const LieAlgebraRep& rep, const CurrentSpec& x, const CurrentSpec& y) {
  for (const CurrentSpec* s : {&x, &y})
    if (s->kind == Kind::T && (s->a < 0 || s->a >= rep.dim_g))
      throw InvalidArgument("generator index out of range");
}

}  // namespace

BracketRhs bracket_rhs(const SectorConfig& cfg, const LieAlgebraRep& rep, const CurrentSpec& x,
                       const CurrentSpec& y, const StructureTable* table) {
  check_pair(rep, x, y);
  BracketRhs r;
  r.conjugate = is_conjugate(cfg, x, y);
  const bool torus = cfg.geometry == Geometry::Torus;
  const int m = x.m + y.m;

  // Coefficient scalar s and result kind/generator, before the sphere l3 sum.
  std::vector<std::pair<cplx, CurrentSpec>> base;
  auto out_spec = [&](Kind k, int a) {
    CurrentSpec s;
    s.kind = k;
    s.a = a;
    s.m = m;
    s.p = torus ? x.p + y.p : 0;
    return s;
  };
  if (x.kind == Kind::T && y.kind == Kind::T) {
    for (int c = 0; c < rep.dim_g; ++c)
      if (rep.structure(x.a, y.a, c) != 0.0)
        base.emplace_back(cplx(0.0, rep.structure(x.a, y.a, c)), out_spec(Kind::T, c));
    if (r.conjugate && x.a == y.a) r.central = expected_k(rep) * x.m * overlap(cfg, x);
  } else if (x.kind == Kind::L && y.kind == Kind::L) {
    if (x.m != y.m) base.emplace_back(cplx(x.m - y.m), out_spec(Kind::L, 0));
    if (r.conjugate)
      r.central = expected_c(cfg.d) / 12.0 * x.m * (x.m * x.m - 1.0) * overlap(cfg, x);
  } else if (x.kind == Kind::L) {
    if (y.m != 0) base.emplace_back(cplx(-y.m), out_spec(Kind::T, y.a));
  } else {
    if (x.m != 0) base.emplace_back(cplx(x.m), out_spec(Kind::T, x.a));
  }

  if (torus) {
    r.terms = std::move(base);
    return r;
  }
  if (!table) throw InvalidArgument("sphere brackets need a structure table");
  for (const auto& [coef, spec] : base)
    for (int l3 = std::abs(m); l3 <= x.l + y.l; ++l3) {
      const double c = (*table)(x.l, x.m, y.l, y.m, l3);
      if (c == 0.0) continue;
      CurrentSpec s = spec;
      s.l = l3;
      r.terms.emplace_back(coef * c, s);
    }
  return r;
}

Operator rhs_operator(const FockSpace& space, const LieAlgebraRep& rep, const BracketRhs& rhs,
                      const StructureTable* table, NsProjectionCache* ns_cache) {
  Operator op(space);
  for (const auto& [coef, spec] : rhs.terms)
    op.add(coef, build_current(space, rep, spec, table, ns_cache));
  return op;
}

double central_z_anomaly(const LieAlgebraRep& rep, int d, Kind kx, int ax, Kind ky, int ay, int m,
                         Boundary z_sector) {
  double s = 0.0;
  for (HalfInt n : z_points(m, z_sector)) {
    const double g = g_z(n) + g_z(HalfInt::from_int(m) - n) - 1.0;
    if (g != 0.0) s += g * wick_f(rep, d, kx, ax, ky, ay, m, n.value());
  }
  return s - lambda_part(kx, ky, m, d, z_sector);
}

double central_analytic(const SectorConfig& cfg, const LieAlgebraRep& rep, const CurrentSpec& x,
                        const CurrentSpec& y) {
  check_pair(rep, x, y);
  if (!is_conjugate(cfg, x, y)) return 0.0;
  const int m = x.m;
  double wick = 0.0;
  for (HalfInt n : z_points(m, cfg.z_sector)) {
    const double g = g_z(n) + g_z(HalfInt::from_int(m) - n) - 1.0;
    if (g == 0.0) continue;
    // Regularised multiplicity of the internal modes paired with this n.
    DeltaDescriptor desc{cfg.geometry, cfg.geometry == Geometry::Torus ? cfg.angular_sector : cfg.z_sector,
                         n.is_integer() ? n.as_int() : 0};
    const double mult = delta_reg_zero(desc);
    wick += g * mult * wick_f(rep, cfg.d, x.kind, x.a, y.kind, y.a, m, n.value());
  }
  if (cfg.geometry == Geometry::Sphere && cfg.z_sector == Boundary::NS)
    delta_reg_zero({Geometry::Sphere, Boundary::NS, 0});  // throws
  return (wick - lambda_part(x.kind, y.kind, m, cfg.d, cfg.z_sector)) * overlap(cfg, x);
}

HeatSum central_eps_heat_sum(const SectorConfig& cfg, const LieAlgebraRep& rep,
                             const CurrentSpec& x, const CurrentSpec& y) {
  check_pair(rep, x, y);
  if (cfg.geometry != Geometry::Torus)
    throw InvalidArgument("the eps pipeline is implemented for the torus only");
  HeatSum hs;
  if (!is_conjugate(cfg, x, y)) return hs;
  const int m = x.m;
  const HalfInt hm = HalfInt::from_int(m), hp = HalfInt::from_int(x.p);
  // q-range where weights or exponents are not yet on their asymptotic line.
  const int lo2 = 2 * (std::min(0, x.p) - 1), hi2 = 2 * (std::max(0, x.p) + 1);
  const bool r_ang = cfg.angular_sector == Boundary::R;
  auto on_lat = [&](int t) { return (std::abs(t) % 2 == 0) == r_ang; };
  int q_lo = lo2, q_hi = hi2;
  while (!on_lat(q_lo)) --q_lo;
  while (!on_lat(q_hi)) ++q_hi;
  auto exponent = [&](HalfInt q) { return q.abs().value() + (hp - q).abs().value() - 1.0; };

  for (HalfInt n : z_points(m, cfg.z_sector)) {
    const double f = wick_f(rep, cfg.d, x.kind, x.a, y.kind, y.a, m, n.value());
    if (f == 0.0) continue;
    auto weight = [&](HalfInt q) { return g_torus(n, q) + g_torus(hm - n, hp - q) - 1.0; };
    for (int t = q_lo; t <= q_hi; t += 2) {
      const HalfInt q = HalfInt::from_twice(t);
      const double w = weight(q);
      if (w != 0.0) hs.terms.push_back({w * f, exponent(q)});
    }
    // Tails beyond q_hi and below q_lo: exponent grows by 2 per lattice step.
    const HalfInt up = HalfInt::from_twice(q_hi + 2), dn = HalfInt::from_twice(q_lo - 2);
    if (const double w = weight(up); w != 0.0) hs.tails.push_back({w * f, 2.0, exponent(up)});
    if (const double w = weight(dn); w != 0.0) hs.tails.push_back({w * f, 2.0, exponent(dn)});
  }
  const double lam = lambda_part(x.kind, y.kind, m, cfg.d, cfg.z_sector);
  if (lam != 0.0) hs.terms.push_back({-lam, 0.0});
  return hs;
}

double central_eps(const SectorConfig& cfg, const LieAlgebraRep& rep, const CurrentSpec& x,
                   const CurrentSpec& y) {
  return heat_sum_finite_part(central_eps_heat_sum(cfg, rep, x, y)).finite;
}

double central_raw(const FockSpace& space, const LieAlgebraRep& rep, const CurrentSpec& x,
                   const CurrentSpec& y, const StructureTable* table) {
  const BracketRhs rhs = bracket_rhs(space.config(), rep, x, y, table);
  const Operator a = build_current(space, rep, x, table);
  const Operator b = build_current(space, rep, y, table);
  const Operator r = rhs_operator(space, rep, rhs, table);
  const FockState vac = space.vacuum_states()[0];
  StateVector in(vac);
  StateVector out = a.apply(b.apply(in));
  out.axpy(-1.0, b.apply(a.apply(in)));
  out.axpy(-1.0, r.apply(in));
  return out.amplitude(vac).real();
}

double measure_central(const FockSpace& space, const LieAlgebraRep& rep, const CurrentSpec& x,
                       const CurrentSpec& y, CentralMethod method, const StructureTable* table) {
  switch (method) {
    case CentralMethod::Raw: return central_raw(space, rep, x, y, table);
    case CentralMethod::Eps: return central_eps(space.config(), rep, x, y);
    case CentralMethod::Analytic: return central_analytic(space.config(), rep, x, y);
  }
  return 0.0;
}

}  // namespace km2d
