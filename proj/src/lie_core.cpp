// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/lie_core.hpp"

#include "km2d/errors.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <utility>

namespace km2d {

namespace {

std::vector<std::pair<int, int>> so_basis_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

Eigen::MatrixXd so_basis_element(int n, int i, int j) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  e(i, j) = 1.0;
  e(j, i) = -1.0;
  return e;
}

LieAlgebraRep finish(std::string name, std::vector<Eigen::MatrixXd> gens) {
  LieAlgebraRep rep;
  rep.name = std::move(name);
  rep.dim_g = static_cast<int>(gens.size());
  rep.d = gens.empty() ? 0 : static_cast<int>(gens.front().rows());
  rep.c_m = gens.empty() ? 0.0 : -(gens[0] * gens[0]).trace();
  rep.f = structure_from_generators(gens, rep.c_m);
  rep.generators = std::move(gens);
  return rep;
}

}  // namespace

std::vector<double> structure_from_generators(const std::vector<Eigen::MatrixXd>& generators,
                                              double c_m) {
  const int g = static_cast<int>(generators.size());
  std::vector<double> f(static_cast<size_t>(g) * g * g, 0.0);
  if (g == 0) return f;
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      const Eigen::MatrixXd comm =
          generators[a] * generators[b] - generators[b] * generators[a];
      for (int c = 0; c < g; ++c) {
        // Tr([M_a,M_b] M_c) = f_ab^e Tr(M_e M_c) = -C_M f_ab^c
        f[(a * g + b) * g + c] = -(comm * generators[c]).trace() / c_m;
      }
    }
  return f;
}

LieAlgebraRep build_so_adjoint(int n) {
  if (n < 3) throw InvalidArgument("so(n) adjoint needs n >= 3, got " + std::to_string(n));
  const auto pairs = so_basis_pairs(n);
  const int g = static_cast<int>(pairs.size());
  std::vector<Eigen::MatrixXd> basis;
  for (auto [i, j] : pairs) basis.push_back(so_basis_element(n, i, j));

  // Structure constants of the defining basis; the basis is orthonormal for
  // -1/2 Tr, so [E_a, E_b] = sum_c f_ab^c E_c with f read off by projection.
  std::vector<Eigen::MatrixXd> adjoint(g, Eigen::MatrixXd::Zero(g, g));
  for (int a = 0; a < g; ++a)
    for (int c = 0; c < g; ++c) {
      const Eigen::MatrixXd comm = basis[a] * basis[c] - basis[c] * basis[a];
      for (int b = 0; b < g; ++b) {
        // (ad E_a)_{bc} = coefficient of E_b in [E_a, E_c]
        adjoint[a](b, c) = -0.5 * (comm * basis[b]).trace();
      }
    }
  if (n == 3) {
    // Order the so(3) basis as (E_23, E_31, E_12) so that M_a = -eps_a.. exactly.
    Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(3, 3), m2 = m1, m3 = m1;
    m1(1, 2) = -1; m1(2, 1) = 1;
    m2(2, 0) = -1; m2(0, 2) = 1;
    m3(0, 1) = -1; m3(1, 0) = 1;
    return finish("so3-adjoint", {m1, m2, m3});
  }
  return finish("so" + std::to_string(n) + "-adjoint", std::move(adjoint));
}

LieAlgebraRep build_so_vector(int n) {
  if (n < 3) throw InvalidArgument("so(n) vector needs n >= 3, got " + std::to_string(n));
  std::vector<Eigen::MatrixXd> gens;
  for (auto [i, j] : so_basis_pairs(n)) gens.push_back(so_basis_element(n, i, j));
  return finish("so" + std::to_string(n) + "-vector", std::move(gens));
}

LieAlgebraRep build_trivial(int d) {
  if (d < 1) throw InvalidArgument("flavour count must be positive");
  LieAlgebraRep rep;
  rep.name = "free" + std::to_string(d);
  rep.d = d;
  return rep;
}

RepValidation validate_rep(const LieAlgebraRep& rep, double tol) {
  RepValidation v;
  const int g = rep.dim_g;
  if (static_cast<int>(rep.generators.size()) != g ||
      rep.f.size() != static_cast<size_t>(g) * g * g) {
    v.structural_ok = false;
    v.structural_message = "generator count or f-tensor size does not match dim_g";
  }
  for (const auto& m : rep.generators)
    if (m.rows() != rep.d || m.cols() != rep.d) {
      v.structural_ok = false;
      v.structural_message = "generator is not d x d";
    }
  if (!v.structural_ok) return v;

  for (int a = 0; a < g; ++a) {
    const auto& ma = rep.generators[a];
    v.antisymmetry = std::max(v.antisymmetry, (ma + ma.transpose()).cwiseAbs().maxCoeff());
    for (int b = 0; b < g; ++b) {
      const auto& mb = rep.generators[b];
      Eigen::MatrixXd diff = ma * mb - mb * ma;
      for (int c = 0; c < g; ++c) diff -= rep.structure(a, b, c) * rep.generators[c];
      v.commutation = std::max(v.commutation, diff.norm());
      const double tr = (ma * mb).trace() + (a == b ? rep.c_m : 0.0);
      v.trace_norm = std::max(v.trace_norm, std::abs(tr));
      for (int c = 0; c < g; ++c)
        v.f_antisymmetry = std::max(
            v.f_antisymmetry, std::abs(rep.structure(a, b, c) + rep.structure(b, a, c)));
    }
  }
  // f_ab^e f_ec^h + f_bc^e f_ea^h + f_ca^e f_eb^h = 0
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b)
      for (int c = 0; c < g; ++c)
        for (int h = 0; h < g; ++h) {
          double s = 0.0;
          for (int e = 0; e < g; ++e)
            s += rep.structure(a, b, e) * rep.structure(e, c, h) +
                 rep.structure(b, c, e) * rep.structure(e, a, h) +
                 rep.structure(c, a, e) * rep.structure(e, b, h);
          v.jacobi = std::max(v.jacobi, std::abs(s));
        }
  v.pass = (g == 0 || rep.c_m > 0.0) && v.antisymmetry <= tol && v.commutation <= tol &&
           v.f_antisymmetry <= tol && v.jacobi <= tol && v.trace_norm <= tol;
  return v;
}

RepRegistry& RepRegistry::instance() {
  static RepRegistry registry;
  return registry;
}

RepRegistry::RepRegistry() {
  add("so3-adjoint", [] { return build_so_adjoint(3); });
}

void RepRegistry::add(const std::string& name, Builder builder) {
  builders_[name] = std::move(builder);
}

LieAlgebraRep RepRegistry::build(const std::string& name) const {
  if (auto it = builders_.find(name); it != builders_.end()) return it->second();
  static const std::regex so_re(R"(so(\d+)-(adjoint|vector))");
  static const std::regex free_re(R"(free(\d+))");
  std::smatch match;
  if (std::regex_match(name, match, so_re)) {
    const int n = std::stoi(match[1]);
    return match[2] == "adjoint" ? build_so_adjoint(n) : build_so_vector(n);
  }
  if (std::regex_match(name, match, free_re)) return build_trivial(std::stoi(match[1]));
  throw InvalidArgument("unknown representation '" + name + "'");
}

std::vector<std::string> RepRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : builders_) out.push_back(k);
  return out;
}

}  // namespace km2d
