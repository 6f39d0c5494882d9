// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/currents.hpp"
#include "km2d/regulator.hpp"

#include <string>
#include <utility>
#include <vector>

namespace km2d {

enum class CentralMethod { Raw, Eps, Analytic };

CentralMethod parse_central_method(const std::string& s);
std::string to_string(CentralMethod m);

/// Expected right-hand side of [X, Y]: operator terms plus the central value.
struct BracketRhs {
  std::vector<std::pair<cplx, CurrentSpec>> terms;
  bool conjugate = false;  // Y is the mode partner of X, so a c-number may appear
  double central = 0.0;
  std::string str(Geometry g) const;
};

/// Torus:
///   [T^a_{m,p}, T^b_{n,q}] = i f^{ab}_c T^c_{m+n,p+q} + k m delta^{ab} delta_{m+n} delta_{p+q}
///   [L_{m,p},  L_{n,q}]   = (m-n) L_{m+n,p+q} + (c/12) m(m^2-1) delta_{m+n} delta_{p+q}
///   [L_{m,p},  T^a_{n,q}] = lt_coefficient * T^a_{m+n,p+q}
/// with lt_coefficient = -n unless overridden. Sphere: the same with
/// sum_l3 c_{l1 m1 l2 m2}^{l3, m1+m2} on the right and (-1)^{m1} delta_{l1 l2}
/// in the central terms. k = C_M/2, c = d/2.
BracketRhs bracket_rhs(const SectorConfig& cfg, const LieAlgebraRep& rep, const CurrentSpec& x,
                       const CurrentSpec& y, const StructureTable* table = nullptr);

/// Operator sum of the RHS terms (central value excluded).
Operator rhs_operator(const FockSpace& space, const LieAlgebraRep& rep, const BracketRhs& rhs,
                      const StructureTable* table = nullptr, NsProjectionCache* ns_cache = nullptr);

/// z-direction anomaly of <[X_m, Y_{-m}]> per internal mode: Wick double
/// contraction sum_n (g(n) + g(m-n) - 1) F(n) with g = 1 (annihilating),
/// 1/2 (zero mode), 0 (creating), minus 2 m lambda d for L-L.
double central_z_anomaly(const LieAlgebraRep& rep, int d, CurrentSpec::Kind kx, int ax,
                         CurrentSpec::Kind ky, int ay, int m, Boundary z_sector);

/// z-anomaly x delta_reg(0) x internal overlap. Sphere NS throws
/// UnresolvedPrescription. Non-conjugate pairs give 0.
double central_analytic(const SectorConfig& cfg, const LieAlgebraRep& rep, const CurrentSpec& x,
                        const CurrentSpec& y);

/// Torus only: eps-weighted double contractions with the mode ordering of each
/// (n, q) pair, summed over q as a HeatSum and reduced to its finite part.
double central_eps(const SectorConfig& cfg, const LieAlgebraRep& rep, const CurrentSpec& x,
                   const CurrentSpec& y);

/// Heat sum behind central_eps (exposed for the Richardson cross-check).
HeatSum central_eps_heat_sum(const SectorConfig& cfg, const LieAlgebraRep& rep,
                             const CurrentSpec& x, const CurrentSpec& y);

/// <vac| [X, Y] - RHS |vac> in the truncated Fock space; grows with the
/// angular cutoff.
double central_raw(const FockSpace& space, const LieAlgebraRep& rep, const CurrentSpec& x,
                   const CurrentSpec& y, const StructureTable* table = nullptr);

double measure_central(const FockSpace& space, const LieAlgebraRep& rep, const CurrentSpec& x,
                       const CurrentSpec& y, CentralMethod method,
                       const StructureTable* table = nullptr);

/// c = d/2 and k = C_M/2.
inline double expected_c(int d) { return 0.5 * d; }
inline double expected_k(const LieAlgebraRep& rep) { return 0.5 * rep.c_m; }

}  // namespace km2d
