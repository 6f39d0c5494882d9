// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/window.hpp"

#include "km2d/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace km2d {

Window Window::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw InvalidArgument("window must be 'Wz,Wa,N', got '" + text + "'");
  Window w;
  w.w_z = HalfInt::parse(parts[0]);
  w.w_a = HalfInt::parse(parts[1]);
  const HalfInt n = HalfInt::parse(parts[2]);
  if (!n.is_integer() || n.twice() < 0) throw InvalidArgument("window particle bound must be a non-negative integer");
  w.n_max = n.as_int();
  if (w.w_z.twice() < 0 || w.w_a.twice() < 0) throw InvalidArgument("window bounds must be non-negative");
  return w;
}

std::string Window::str() const {
  return w_z.str() + "," + w_a.str() + "," + std::to_string(n_max);
}

std::vector<FockState> window_states(const FockSpace& space, const Window& w) {
  const bool torus = space.geometry() == Geometry::Torus;
  auto slot_ok = [&](const ModeLabel& x) { return torus ? x.p.abs() <= w.w_a : x.l <= w.w_a; };
  uint32_t mask = space.spinor_dim() - 1;
  if (!torus) {
    mask = 0;
    for (int k = 0; k < space.num_oscillators(); ++k)
      if (space.generator_mode(2 * k).l <= w.w_a && space.generator_mode(2 * k + 1).l <= w.w_a)
        mask |= 1u << k;
  }
  return space.enumerate(slot_ok, w.n_max, w.w_z, [mask](uint32_t s) { return (s & ~mask) == 0; });
}

void check_window(const FockSpace& space, const Window& w, const CurrentSpec& a,
                  const CurrentSpec& b) {
  const SectorConfig& c = space.config();
  auto fail = [&](const std::string& dir, HalfInt need, HalfInt have) {
    throw WindowError("window " + w.str() + " needs " + dir + " cutoff >= " + need.str() + " for " +
                      a.str(c.geometry) + ", " + b.str(c.geometry) + "; have " + have.str());
  };
  if (c.geometry == Geometry::Torus) {
    const HalfInt need_m = w.w_z + HalfInt::from_int(std::max(std::abs(a.m), std::abs(b.m)));
    const HalfInt need_p = w.w_a + HalfInt::from_int(std::max(std::abs(a.p), std::abs(b.p)));
    if (c.m_cut < need_m) fail("m", need_m, c.m_cut);
    if (c.p_cut < need_p) fail("p", need_p, c.p_cut);
  } else {
    const HalfInt need_l = w.w_a + HalfInt::from_int(std::max(a.l, b.l));
    if (c.l_cut < need_l) fail("l", need_l, c.l_cut);
  }
}

int parallel_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("KM2D_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(n, 1);
}

namespace {

using Index = std::unordered_map<FockState, int, FockStateHash>;

Index make_index(const std::vector<FockState>& basis) {
  Index idx;
  idx.reserve(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], static_cast<int>(i));
  return idx;
}

template <class Column>
Eigen::MatrixXcd fill_columns(const std::vector<FockState>& basis, Execution exec, Column&& column) {
  const Index idx = make_index(basis);
  const int n = static_cast<int>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  auto one = [&](int j) {
    const StateVector v = column(basis[j]);
    for (const auto& [s, amp] : v.entries())
      if (auto it = idx.find(s); it != idx.end()) m(it->second, j) = amp;
  };
  if (exec == Execution::Serial) {
    for (int j = 0; j < n; ++j) one(j);
  } else {
#pragma omp parallel for schedule(dynamic) num_threads(parallel_threads())
    for (int j = 0; j < n; ++j) one(j);
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd operator_on_window(const Operator& op, const std::vector<FockState>& basis,
                                    Execution exec) {
  op.terms();  // finalise before threads share the operator
  return fill_columns(basis, exec, [&](const FockState& s) { return op.apply(s); });
}

Eigen::MatrixXcd commutator_on_window(const Operator& a, const Operator& b,
                                      const std::vector<FockState>& basis, Execution exec) {
  a.terms();
  b.terms();
  return fill_columns(basis, exec, [&](const FockState& s) {
    StateVector in(s);
    StateVector r = a.apply(b.apply(in));
    r.axpy(-1.0, b.apply(a.apply(in)));
    return r;
  });
}

}  // namespace km2d
