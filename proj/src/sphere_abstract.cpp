// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/sphere_abstract.hpp"

#include "km2d/errors.hpp"
#include "km2d/half_int.hpp"

#include <cmath>
#include <vector>

namespace km2d {

using cplx = std::complex<double>;

SphereAlgebra::SphereAlgebra(const StructureTable& table, const LieAlgebraRep& rep, double c,
                             double k)
    : table_(table), rep_(rep), c_(c), k_(k) {}

SphereAlgebra::Element SphereAlgebra::bracket(const Gen& x, const Gen& y) const {
  Element out;
  if (x.kind == 2 || y.kind == 2) return out;
  if (x.kind == 1 && y.kind == 0) {
    for (auto& [g, v] : bracket(y, x)) out[g] = -v;
    return out;
  }
  const int m = x.m + y.m;
  const bool paired = m == 0 && x.l == y.l;
  auto spread = [&](cplx coef, int kind, int a) {
    if (coef == cplx(0.0)) return;
    for (int l3 = std::abs(m); l3 <= x.l + y.l; ++l3) {
      const double c = table_(x.l, x.m, y.l, y.m, l3);
      if (c != 0.0) out[{kind, a, l3, m}] += coef * c;
    }
  };
  if (x.kind == 0 && y.kind == 0) {
    spread(double(x.m - y.m), 0, 0);
    if (paired) out[{2, 0, 0, 0}] += parity_sign(x.m) * c_ / 12.0 * x.m * (x.m * x.m - 1.0);
  } else if (x.kind == 1 && y.kind == 1) {
    for (int c = 0; c < rep_.dim_g; ++c) spread(cplx(0.0, rep_.structure(x.a, y.a, c)), 1, c);
    if (paired && x.a == y.a) out[{2, 0, 0, 0}] += parity_sign(x.m) * k_ * x.m;
  } else {
    spread(double(-y.m), 1, y.a);
  }
  return out;
}

SphereAlgebra::Element SphereAlgebra::bracket(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [gx, vx] : x)
    for (const auto& [gy, vy] : y)
      for (const auto& [g, v] : bracket(gx, gy)) out[g] += vx * vy * v;
  return out;
}

double SphereAlgebra::jacobi(const Gen& x, const Gen& y, const Gen& z) const {
  Element sum;
  auto add = [&](const Gen& a, const Gen& b, const Gen& c) {
    for (const auto& [g, v] : bracket(bracket(a, b), Element{{c, 1.0}})) sum[g] += v;
  };
  add(x, y, z);
  add(y, z, x);
  add(z, x, y);
  double worst = 0.0;
  for (const auto& kv : sum) worst = std::max(worst, std::abs(kv.second));
  return worst;
}

JacobiReport check_sphere_abstract(const StructureTable& table, const LieAlgebraRep& rep,
                                   int l_probe, double tol) {
  if (table.l_max() < 3 * l_probe) throw TableCoverageError(3 * l_probe);
  const SphereAlgebra alg(table, rep, 0.5 * rep.d, 0.5 * rep.c_m);
  std::vector<SphereAlgebra::Gen> gens;
  for (int l = 0; l <= l_probe; ++l)
    for (int m = -l; m <= l; ++m) {
      gens.push_back(SphereAlgebra::L(l, m));
      for (int a = 0; a < rep.dim_g; ++a) gens.push_back(SphereAlgebra::T(a, l, m));
    }
  JacobiReport r;
  r.l_probe = l_probe;
  r.table_l_max = table.l_max();
  r.tol = tol;
  for (const char* f : {"LLL", "LLT", "LTT", "TTT"}) r.max_by_family[f] = 0.0;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i; j < gens.size(); ++j)
      for (size_t k = j; k < gens.size(); ++k) {
        const double res = alg.jacobi(gens[i], gens[j], gens[k]);
        const int n_t = gens[i].kind + gens[j].kind + gens[k].kind;
        const std::string fam = std::string(3 - n_t, 'L') + std::string(n_t, 'T');
        r.max_by_family[fam] = std::max(r.max_by_family[fam], res);
        r.max_residual = std::max(r.max_residual, res);
        ++r.triples;
      }
  r.pass = r.max_residual <= tol;
  return r;
}

}  // namespace km2d
