// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/currents.hpp"
#include "km2d/fock.hpp"
#include "km2d/harmonics.hpp"

#include <string>
#include <vector>

namespace km2d {

/// Probe states: occupied slots with |angular| <= w_a (torus |p|, sphere l),
/// total z-level <= w_z, at most n_max particles. On the sphere only zero-mode
/// oscillators built from generators with l <= w_a may be excited.
struct Window {
  HalfInt w_z = HalfInt::from_int(1);
  HalfInt w_a = HalfInt::from_int(1);
  int n_max = 2;

  /// "Wz,Wa,N", e.g. "1,1,2" or "3/2,1/2,2".
  static Window parse(const std::string& text);
  std::string str() const;
};

std::vector<FockState> window_states(const FockSpace& space, const Window& w);

/// Throws WindowError unless the cutoffs leave room for every intermediate
/// state of [A,B] on the window: cutoff >= window + max(|mode_A|, |mode_B|)
/// in each truncated direction.
void check_window(const FockSpace& space, const Window& w, const CurrentSpec& a,
                  const CurrentSpec& b);

/// <basis_i| op |basis_j>. Columns are independent; the parallel path
/// distributes them over OpenMP threads and gives identical results.
Eigen::MatrixXcd operator_on_window(const Operator& op, const std::vector<FockState>& basis,
                                    Execution exec = Execution::Serial);

/// <basis_i| [A,B] |basis_j>, computed as A(B psi) - B(A psi) per column.
Eigen::MatrixXcd commutator_on_window(const Operator& a, const Operator& b,
                                      const std::vector<FockState>& basis,
                                      Execution exec = Execution::Serial);

/// Thread count used by Execution::Parallel (KM2D_THREADS caps it).
int parallel_threads();

}  // namespace km2d
