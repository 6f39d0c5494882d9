// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/central.hpp"
#include "km2d/window.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace km2d {

struct VerifyOptions {
  Window window;
  double tol = 1e-9;
  CentralMethod method = CentralMethod::Analytic;
  int max_mode = 2;  // torus: |m|,|p| <= max_mode; sphere: l <= max_mode
  Execution exec = Execution::Parallel;
};

struct BracketResult {
  CurrentSpec x, y;
  std::string lhs, rhs;
  bool conjugate = false;
  double residual = 0.0;  // max |<psi'|[X,Y] - RHS|psi> - kappa delta|
  cplx kappa = 0.0;       // truncated vacuum c-number that was subtracted
  double central_measured = 0.0;
  double central_expected = 0.0;
  std::string worst_element;
  std::optional<double> lt_fit;  // [L,T] brackets: least-squares RHS coefficient
  bool pass = false;
};

/// Least-squares coefficient x in [L_{m,p}, T^a_{n,q}] ~ x T^a_{m+n,p+q} on the window.
struct LtSample {
  int m = 0, p = 0, n = 0, q = 0, a = 0;
  std::optional<double> measured;  // empty when T^a_{m+n,p+q} vanishes on the window
  double minus_n = 0.0;
  double minus_p = 0.0;
};

struct Charges {
  double c_measured = 0.0, k_measured = 0.0;
  double c_expected = 0.0, k_expected = 0.0;
};

struct CommutatorReport {
  std::string task;
  SectorConfig cfg;
  std::string rep;
  Window window;
  double tol = 0.0;
  CentralMethod method = CentralMethod::Analytic;
  std::vector<BracketResult> brackets;
  Charges charges;
  bool has_charges = false;
  std::vector<LtSample> lt_samples;
  bool lt_matches_minus_n = true;     // every measurable sample equals -n
  bool lt_matches_printed_minus_p = true;
  double max_residual = 0.0;
  bool pass = false;
};

/// Operator cache: currents built once, then shared read-only across threads.
class CurrentCache {
 public:
  CurrentCache(const FockSpace& space, const LieAlgebraRep& rep, const StructureTable* table)
      : space_(space), rep_(rep), table_(table) {}
  const Operator& get(const CurrentSpec& spec);
  /// Window matrix of a cached current. Matrices are dropped when the basis changes.
  const Eigen::MatrixXcd& window_matrix(const CurrentSpec& spec, const std::vector<FockState>& basis);

 private:
  const FockSpace& space_;
  const LieAlgebraRep& rep_;
  const StructureTable* table_;
  NsProjectionCache ns_;
  std::map<CurrentSpec, Operator> ops_;
  std::map<CurrentSpec, Eigen::MatrixXcd> mats_;
  std::vector<FockState> mats_basis_;
};

/// One bracket on the window. The RHS operators must already be in `cache`
/// (see prepare_bracket) when called from several threads.
BracketResult evaluate_bracket(const FockSpace& space, const LieAlgebraRep& rep,
                               const CurrentSpec& x, const CurrentSpec& y,
                               const std::vector<FockState>& basis, CurrentCache& cache,
                               const VerifyOptions& opt, const StructureTable* table = nullptr);

/// Builds every operator and window matrix evaluate_bracket will touch.
void prepare_bracket(const FockSpace& space, const LieAlgebraRep& rep, const CurrentSpec& x,
                     const CurrentSpec& y, const std::vector<FockState>& basis, CurrentCache& cache,
                     const StructureTable* table = nullptr);

/// All brackets between T^a_{m,p}, L_{m,p} with |m|,|p| <= max_mode, the
/// charges from the central pipeline and the [L,T] coefficient scan.
CommutatorReport check_torus_algebra(const FockSpace& space, const LieAlgebraRep& rep,
                                     const VerifyOptions& opt);

/// All brackets between T^a_{l,m}, L_{l,m} with l <= max_mode on the sphere.
CommutatorReport check_sphere_realization(const FockSpace& space, const LieAlgebraRep& rep,
                                          const StructureTable& table, const VerifyOptions& opt);

}  // namespace km2d
