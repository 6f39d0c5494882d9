// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/half_int.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace km2d {

using cplx = std::complex<double>;

enum class Geometry { Torus, Sphere };
enum class Boundary { R, NS };

std::string to_string(Geometry g);
std::string to_string(Boundary b);

/// Sector and truncation of a fermionic Fock space.
///
/// Torus: modes b^i_{m,p}, |m| <= m_cut, |p| <= p_cut, with m on the
/// z_sector lattice and p on the angular_sector lattice (R: integers,
/// NS: half-odd-integers). Sphere: modes b^i_{l,m} (R) or b^{i,eta}_{l,m}
/// (NS) with |m| <= l <= l_cut; angular_sector is ignored.
struct SectorConfig {
  Geometry geometry = Geometry::Torus;
  Boundary z_sector = Boundary::NS;
  Boundary angular_sector = Boundary::NS;
  int d = 1;
  HalfInt m_cut = HalfInt::from_twice(1);
  HalfInt p_cut = HalfInt::from_twice(1);
  HalfInt l_cut = HalfInt::from_int(1);

  /// Throws InvalidArgument on non-positive cutoffs or lattice mismatch.
  void validate() const;

  static SectorConfig torus(Boundary z, Boundary angular, int d, HalfInt m_cut, HalfInt p_cut);
  static SectorConfig sphere(Boundary z, int d, HalfInt l_cut);
};

/// A fermion mode index. Flavours are 0-based internally and printed 1-based.
/// Torus uses (m, p); sphere R uses (l, m); sphere NS uses (l, m, eta).
struct ModeLabel {
  int flavour = 0;
  HalfInt m;
  HalfInt p;
  HalfInt l;
  int eta = 0;

  static ModeLabel torus(int flavour, HalfInt m, HalfInt p) { return {flavour, m, p, {}, 0}; }
  static ModeLabel sphere(int flavour, HalfInt l, HalfInt m, int eta = 0) {
    return {flavour, m, {}, l, eta};
  }

  auto operator<=>(const ModeLabel&) const = default;
  std::string str(Geometry g) const;
};

struct ModeLabelHash {
  size_t operator()(const ModeLabel& x) const noexcept;
};

/// Basis state: a label in the zero-mode Clifford module plus the sorted list
/// of occupied creation slots (see FockSpace).
struct FockState {
  uint32_t spinor = 0;
  std::vector<int> occupied;

  auto operator<=>(const FockState&) const = default;
};

struct FockStateHash {
  size_t operator()(const FockState& s) const noexcept;
};

/// Sparse amplitude map over basis states.
class StateVector {
 public:
  using Map = std::unordered_map<FockState, cplx, FockStateHash>;

  StateVector() = default;
  explicit StateVector(const FockState& s, cplx amp = 1.0) { add(s, amp); }

  void add(const FockState& s, cplx amp);
  void add(FockState&& s, cplx amp);
  void axpy(cplx alpha, const StateVector& x);
  StateVector& operator*=(cplx alpha);

  cplx amplitude(const FockState& s) const;
  double max_abs() const;
  double norm() const;
  size_t size() const { return amps_.size(); }
  bool empty() const { return amps_.empty(); }
  /// Drops entries with |amp| <= threshold.
  void prune(double threshold = 0.0);

  const Map& entries() const { return amps_; }
  /// Entries sorted by state, for deterministic output.
  std::vector<std::pair<FockState, cplx>> sorted() const;

 private:
  Map amps_;
};

/// How a mode operator acts on the occupation basis.
struct Action {
  enum class Kind : uint8_t { Create = 0, Clifford = 1, Annihilate = 2 };
  Kind kind = Kind::Create;
  int index = 0;      // slot id or Clifford generator id
  double coef = 1.0;  // b_X = coef * (elementary operator)

  /// Canonical rank: creators < Clifford generators < annihilators.
  std::pair<int, int> rank() const { return {static_cast<int>(kind), index}; }
};

/// Truncated fermionic Fock space for one sector.
///
/// Modes that are negative under the mode order (torus: m < 0, or m = 0 and
/// p < 0; sphere: m < 0) are creation "slots"; their conjugates annihilate
/// the same slot. Self-conjugate zero modes (torus (R,R) b^i_{00}; sphere R
/// b^i_{l,0}) generate a Clifford algebra with {g_a, g_b} = delta_ab. They are
/// paired into oscillators a_k = (g_{2k} + i g_{2k+1})/sqrt(2) whose
/// occupations are the bits of FockState::spinor; an odd leftover generator
/// acts as (-1)^N / sqrt(2). Jordan-Wigner order: spinor bits, then slots.
class FockSpace {
 public:
  explicit FockSpace(SectorConfig cfg);

  const SectorConfig& config() const { return cfg_; }
  Geometry geometry() const { return cfg_.geometry; }
  int d() const { return cfg_.d; }

  /// Every mode inside the cutoffs, in canonical order.
  const std::vector<ModeLabel>& modes() const { return modes_; }
  bool contains(const ModeLabel& x) const;
  /// Throws CutoffError if x lies outside the cutoffs, InvalidArgument if it
  /// is off the sector lattice.
  Action resolve(const ModeLabel& x) const;

  /// Partner Y with {b_X, b_Y} != 0.
  ModeLabel conjugate(const ModeLabel& x) const;
  /// Mode of the adjoint and the accompanying phase: (b_X)^dagger = phase * b_Y.
  std::pair<ModeLabel, double> adjoint(const ModeLabel& x) const;
  /// Postulated c-number {b_X, b_Y}.
  double anticommutator(const ModeLabel& x, const ModeLabel& y) const;

  int num_slots() const { return static_cast<int>(slot_modes_.size()); }
  const ModeLabel& slot_mode(int slot) const { return slot_modes_[slot]; }
  int num_generators() const { return static_cast<int>(generator_modes_.size()); }
  const ModeLabel& generator_mode(int g) const { return generator_modes_[g]; }
  int num_oscillators() const { return num_generators() / 2; }
  uint32_t spinor_dim() const { return 1u << num_oscillators(); }

  /// All states with no occupied slot: one per spinor label.
  std::vector<FockState> vacuum_states() const;

  /// z-level (sum of |m|) and angular charge (sum of p on the torus, sum of m
  /// on the sphere) of a state.
  std::pair<HalfInt, HalfInt> grade(const FockState& s) const;

  /// Applies one elementary action. Returns false when the result vanishes.
  bool apply(const Action& a, FockState& s, cplx& amp) const;

  /// Deterministic rendering such as |s=0; (1,-1/2,-1/2),(2,-1/2,1/2)>.
  std::string render(const FockState& s) const;

  /// States whose occupied slots all satisfy `slot_ok`, with at most
  /// max_particles slots and total z-level <= max_level, for every spinor
  /// label accepted by `spinor_ok`.
  std::vector<FockState> enumerate(const std::function<bool(const ModeLabel&)>& slot_ok,
                                   int max_particles, HalfInt max_level,
                                   const std::function<bool(uint32_t)>& spinor_ok = {}) const;

 private:
  SectorConfig cfg_;
  std::vector<ModeLabel> modes_;
  std::vector<ModeLabel> slot_modes_;
  std::vector<ModeLabel> generator_modes_;
  std::unordered_map<ModeLabel, int, ModeLabelHash> slot_of_;
  std::unordered_map<ModeLabel, int, ModeLabelHash> generator_of_;
};

/// Linear operator on state vectors: constant * 1 + sum of coefficient times
/// products of at most two mode operators, stored in canonical (normal) order
/// and applied lazily.
class Operator {
 public:
  struct Term {
    cplx coef;
    std::array<Action, 2> ops;  // ops[0] * ops[1]; ops[1] acts first
    int n = 0;
  };

  explicit Operator(const FockSpace& space) : space_(&space) {}

  const FockSpace& space() const { return *space_; }

  /// Adds coef * b_x.
  void add_mode(cplx coef, const ModeLabel& x);
  /// Adds coef * b_x b_y, reordered to canonical form using the CAR.
  void add_product(cplx coef, const ModeLabel& x, const ModeLabel& y);
  void add_constant(cplx c) { constant_ += c; }
  /// this += alpha * other (same space).
  void add(cplx alpha, const Operator& other);

  cplx constant() const { return constant_; }
  /// Canonical terms (finalised).
  const std::vector<Term>& terms() const;
  size_t num_terms() const { return terms().size(); }

  StateVector apply(const StateVector& v) const;
  StateVector apply(const FockState& s) const;
  void apply_into(const FockState& s, cplx amp, StateVector& out) const;

  /// Dense matrix <basis_i| O |basis_j>.
  Eigen::MatrixXcd matrix(const std::vector<FockState>& basis) const;

 private:
  using Key = std::array<int, 4>;  // kind0, index0, kind1, index1 (-1 when absent)
  void accumulate(cplx coef, const std::array<Action, 2>& ops, int n);
  void finalize() const;

  const FockSpace* space_;
  cplx constant_ = 0.0;
  std::map<Key, cplx> pending_;
  mutable bool dirty_ = true;
  mutable std::vector<Term> terms_;
  mutable std::vector<std::vector<int>> by_slot_;  // terms whose right factor annihilates slot
  mutable std::vector<int> always_;                // remaining terms
};

/// b_X as an operator (creation or annihilation depending on the mode order).
Operator mode_operator(const FockSpace& space, const ModeLabel& x);
/// Alias matching the spec vocabulary; identical to mode_operator.
inline Operator annihilator(const FockSpace& space, const ModeLabel& x) {
  return mode_operator(space, x);
}
/// (b_X)^dagger through the reality condition of the sector.
Operator creator(const FockSpace& space, const ModeLabel& x);

/// Normal-ordered pair of mode operators:
///   first factor annihilating  -> -b_y b_x
///   first factor creating      ->  b_x b_y
///   first factor a zero mode   ->  (b_x b_y - b_y b_x) / 2
Operator normal_ordered_pair(const FockSpace& space, const ModeLabel& x, const ModeLabel& y);

/// Max over mode pairs and basis states of ||({b_X,b_Y} - postulated) psi||_inf.
double check_car(const FockSpace& space, const std::vector<std::pair<ModeLabel, ModeLabel>>& pairs,
                 const std::vector<FockState>& basis);

}  // namespace km2d
