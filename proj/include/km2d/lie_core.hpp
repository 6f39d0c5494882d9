// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace km2d {

/// Compact Lie algebra in a real d-dimensional representation.
///
/// Generators are real antisymmetric d x d matrices with
/// [M_a, M_b] = f_ab^c M_c and Tr(M_a M_b) = -C_M delta_ab. The so(n)
/// representations shipped here have integer entries, so every invariant
/// below holds exactly in double arithmetic.
struct LieAlgebraRep {
  std::string name;
  int dim_g = 0;  // number of generators
  int d = 0;      // representation dimension = number of fermion flavours
  std::vector<Eigen::MatrixXd> generators;
  std::vector<double> f;  // f[(a * dim_g + b) * dim_g + c] = f_ab^c
  double c_m = 0.0;

  double structure(int a, int b, int c) const { return f[(a * dim_g + b) * dim_g + c]; }
  double& structure(int a, int b, int c) { return f[(a * dim_g + b) * dim_g + c]; }
};

struct RepValidation {
  bool structural_ok = true;
  std::string structural_message;
  double antisymmetry = 0.0;  // max |M_a + M_a^t|
  double commutation = 0.0;   // max_ab || [M_a,M_b] - f_ab^c M_c ||_F
  double f_antisymmetry = 0.0;
  double jacobi = 0.0;  // max over (a,b,c,e) of the f-Jacobi sum
  double trace_norm = 0.0;  // max |Tr(M_a M_b) + C_M delta_ab|
  bool pass = false;
};

/// Adjoint representation of so(n) in the basis E_ij = e_i e_j^t - e_j e_i^t, i<j.
/// For n = 3 this is (M_a)_ij = -eps_aij with d = 3, C_M = 2.
LieAlgebraRep build_so_adjoint(int n);

/// Defining (vector) representation of so(n): d = n, C_M = 2.
LieAlgebraRep build_so_vector(int n);

/// d free fermions with no current algebra (dim_g = 0); used for Virasoro-only runs.
LieAlgebraRep build_trivial(int d);

/// Structure constants recomputed from the generator matrices by projection
/// with the trace form. Requires Tr(M_a M_b) proportional to delta_ab.
std::vector<double> structure_from_generators(const std::vector<Eigen::MatrixXd>& generators,
                                              double c_m);

RepValidation validate_rep(const LieAlgebraRep& rep, double tol = 1e-12);

/// String-keyed registry: "so3-adjoint", "so<n>-adjoint", "so<n>-vector",
/// "free<d>". Extra builders may be registered at startup.
class RepRegistry {
 public:
  using Builder = std::function<LieAlgebraRep()>;

  static RepRegistry& instance();

  void add(const std::string& name, Builder builder);
  /// Throws InvalidArgument for unknown names.
  LieAlgebraRep build(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  RepRegistry();
  std::map<std::string, Builder> builders_;
};

}  // namespace km2d
