// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/fock.hpp"

#include "km2d/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace km2d {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool on_lattice(HalfInt x, Boundary b) { return b == Boundary::R ? x.is_integer() : !x.is_integer(); }

std::vector<HalfInt> lattice(HalfInt cut, Boundary b) {
  std::vector<HalfInt> out;
  for (int t = -cut.twice(); t <= cut.twice(); ++t) {
    HalfInt x = HalfInt::from_twice(t);
    if (on_lattice(x, b)) out.push_back(x);
  }
  return out;
}

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

std::string to_string(Geometry g) { return g == Geometry::Torus ? "torus" : "sphere"; }
std::string to_string(Boundary b) { return b == Boundary::R ? "R" : "NS"; }

void SectorConfig::validate() const {
  if (d < 1) throw InvalidArgument("d must be positive");
  if (geometry == Geometry::Torus) {
    if (m_cut.twice() <= 0 || p_cut.twice() <= 0)
      throw InvalidArgument("torus cutoffs must be positive");
    if (!on_lattice(m_cut, z_sector))
      throw InvalidArgument("m cutoff " + m_cut.str() + " is off the " + to_string(z_sector) +
                            " lattice");
    if (!on_lattice(p_cut, angular_sector))
      throw InvalidArgument("p cutoff " + p_cut.str() + " is off the " +
                            to_string(angular_sector) + " lattice");
  } else {
    if (l_cut.twice() < 0 || (z_sector == Boundary::NS && l_cut.twice() < 1))
      throw InvalidArgument("sphere cutoff must be non-negative");
    if (!on_lattice(l_cut, z_sector))
      throw InvalidArgument("l cutoff " + l_cut.str() + " is off the " + to_string(z_sector) +
                            " lattice");
  }
}

SectorConfig SectorConfig::torus(Boundary z, Boundary angular, int d, HalfInt m_cut,
                                 HalfInt p_cut) {
  SectorConfig c;
  c.geometry = Geometry::Torus;
  c.z_sector = z;
  c.angular_sector = angular;
  c.d = d;
  c.m_cut = m_cut;
  c.p_cut = p_cut;
  return c;
}

SectorConfig SectorConfig::sphere(Boundary z, int d, HalfInt l_cut) {
  SectorConfig c;
  c.geometry = Geometry::Sphere;
  c.z_sector = z;
  c.angular_sector = z;
  c.d = d;
  c.l_cut = l_cut;
  return c;
}

std::string ModeLabel::str(Geometry g) const {
  std::ostringstream os;
  os << '(' << flavour + 1 << ',';
  if (g == Geometry::Torus) {
    os << m.str() << ',' << p.str();
  } else {
    os << l.str() << ',' << m.str();
    if (eta != 0) os << ',' << (eta > 0 ? '+' : '-');
  }
  os << ')';
  return os.str();
}

size_t ModeLabelHash::operator()(const ModeLabel& x) const noexcept {
  size_t h = std::hash<int>{}(x.flavour);
  h = mix(h, std::hash<int>{}(x.m.twice()));
  h = mix(h, std::hash<int>{}(x.p.twice()));
  h = mix(h, std::hash<int>{}(x.l.twice()));
  return mix(h, std::hash<int>{}(x.eta));
}

size_t FockStateHash::operator()(const FockState& s) const noexcept {
  size_t h = std::hash<uint32_t>{}(s.spinor);
  for (int o : s.occupied) h = mix(h, std::hash<int>{}(o));
  return h;
}

// ---------------------------------------------------------------- StateVector

void StateVector::add(const FockState& s, cplx amp) {
  if (amp == cplx(0.0)) return;
  amps_[s] += amp;
}

void StateVector::add(FockState&& s, cplx amp) {
  if (amp == cplx(0.0)) return;
  amps_[std::move(s)] += amp;
}

void StateVector::axpy(cplx alpha, const StateVector& x) {
  for (const auto& [s, a] : x.amps_) add(s, alpha * a);
}

StateVector& StateVector::operator*=(cplx alpha) {
  for (auto& kv : amps_) kv.second *= alpha;
  return *this;
}

cplx StateVector::amplitude(const FockState& s) const {
  auto it = amps_.find(s);
  return it == amps_.end() ? cplx(0.0) : it->second;
}

double StateVector::max_abs() const {
  double m = 0.0;
  for (const auto& kv : amps_) m = std::max(m, std::abs(kv.second));
  return m;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& kv : amps_) s += std::norm(kv.second);
  return std::sqrt(s);
}

void StateVector::prune(double threshold) {
  std::erase_if(amps_, [&](const auto& kv) { return std::abs(kv.second) <= threshold; });
}

std::vector<std::pair<FockState, cplx>> StateVector::sorted() const {
  std::vector<std::pair<FockState, cplx>> out(amps_.begin(), amps_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// ------------------------------------------------------------------ FockSpace

FockSpace::FockSpace(SectorConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  if (cfg_.geometry == Geometry::Torus) {
    for (int i = 0; i < cfg_.d; ++i)
      for (HalfInt m : lattice(cfg_.m_cut, cfg_.z_sector))
        for (HalfInt p : lattice(cfg_.p_cut, cfg_.angular_sector))
          modes_.push_back(ModeLabel::torus(i, m, p));
  } else {
    const int l0 = cfg_.z_sector == Boundary::R ? 0 : 1;
    for (int i = 0; i < cfg_.d; ++i)
      for (int tl = l0; tl <= cfg_.l_cut.twice(); tl += 2) {
        HalfInt l = HalfInt::from_twice(tl);
        for (int tm = -tl; tm <= tl; tm += 2) {
          HalfInt m = HalfInt::from_twice(tm);
          if (cfg_.z_sector == Boundary::R) {
            modes_.push_back(ModeLabel::sphere(i, l, m));
          } else {
            modes_.push_back(ModeLabel::sphere(i, l, m, -1));
            modes_.push_back(ModeLabel::sphere(i, l, m, +1));
          }
        }
      }
  }
  std::sort(modes_.begin(), modes_.end());

  for (const ModeLabel& x : modes_) {
    const bool creating = cfg_.geometry == Geometry::Torus
                              ? (x.m.twice() < 0 || (x.m.twice() == 0 && x.p.twice() < 0))
                              : x.m.twice() < 0;
    const bool zero = x.m.twice() == 0 && (cfg_.geometry == Geometry::Sphere || x.p.twice() == 0);
    if (creating) slot_modes_.push_back(x);
    if (zero) generator_modes_.push_back(x);
  }
  // Sphere generators in (l, flavour) order so low-l oscillators come first.
  std::sort(generator_modes_.begin(), generator_modes_.end(),
            [](const ModeLabel& a, const ModeLabel& b) {
              return std::tie(a.l, a.flavour) < std::tie(b.l, b.flavour);
            });
  if (num_oscillators() > 30) throw InvalidArgument("too many zero modes for the spinor label");
  for (int s = 0; s < num_slots(); ++s) slot_of_[slot_modes_[s]] = s;
  for (int g = 0; g < num_generators(); ++g) generator_of_[generator_modes_[g]] = g;
}

bool FockSpace::contains(const ModeLabel& x) const {
  return std::binary_search(modes_.begin(), modes_.end(), x);
}

Action FockSpace::resolve(const ModeLabel& x) const {
  if (x.flavour < 0 || x.flavour >= cfg_.d)
    throw InvalidArgument("flavour " + std::to_string(x.flavour + 1) + " out of range");
  const Geometry g = cfg_.geometry;
  if (g == Geometry::Torus) {
    if (!on_lattice(x.m, cfg_.z_sector) || !on_lattice(x.p, cfg_.angular_sector))
      throw InvalidArgument("mode " + x.str(g) + " is off the sector lattice");
    if (x.m.abs() > cfg_.m_cut || x.p.abs() > cfg_.p_cut)
      throw CutoffError("mode " + x.str(g) + " lies outside the cutoffs");
  } else {
    const bool eta_ok = cfg_.z_sector == Boundary::R ? x.eta == 0 : (x.eta == 1 || x.eta == -1);
    if (!on_lattice(x.l, cfg_.z_sector) || !on_lattice(x.m, cfg_.z_sector) || !eta_ok ||
        x.m.abs() > x.l)
      throw InvalidArgument("mode " + x.str(g) + " is not a valid sphere mode");
    if (x.l > cfg_.l_cut) throw CutoffError("mode " + x.str(g) + " lies outside the cutoffs");
  }

  if (auto it = slot_of_.find(x); it != slot_of_.end()) {
    double coef = 1.0;
    if (g == Geometry::Sphere && cfg_.z_sector == Boundary::R) coef = parity_sign(x.m.as_int());
    return {Action::Kind::Create, it->second, coef};
  }
  if (auto it = generator_of_.find(x); it != generator_of_.end())
    return {Action::Kind::Clifford, it->second, 1.0};
  return {Action::Kind::Annihilate, slot_of_.at(conjugate(x)), 1.0};
}

ModeLabel FockSpace::conjugate(const ModeLabel& x) const {
  ModeLabel y = x;
  y.m = -x.m;
  y.p = -x.p;
  y.eta = -x.eta;
  return y;
}

std::pair<ModeLabel, double> FockSpace::adjoint(const ModeLabel& x) const {
  double phase = 1.0;
  if (cfg_.geometry == Geometry::Sphere && cfg_.z_sector == Boundary::R)
    phase = parity_sign(x.m.as_int());
  return {conjugate(x), phase};
}

double FockSpace::anticommutator(const ModeLabel& x, const ModeLabel& y) const {
  if (!(conjugate(x) == y)) return 0.0;
  if (cfg_.geometry == Geometry::Sphere && cfg_.z_sector == Boundary::R)
    return parity_sign(x.m.as_int());
  return 1.0;
}

std::vector<FockState> FockSpace::vacuum_states() const {
  std::vector<FockState> out;
  for (uint32_t s = 0; s < spinor_dim(); ++s) out.push_back({s, {}});
  return out;
}

std::pair<HalfInt, HalfInt> FockSpace::grade(const FockState& s) const {
  HalfInt level, charge;
  for (int o : s.occupied) {
    const ModeLabel& x = slot_modes_[o];
    level += x.m.abs();
    charge += cfg_.geometry == Geometry::Torus ? x.p : x.m;
  }
  return {level, charge};
}

bool FockSpace::apply(const Action& a, FockState& s, cplx& amp) const {
  auto& occ = s.occupied;
  switch (a.kind) {
    case Action::Kind::Create:
    case Action::Kind::Annihilate: {
      auto it = std::lower_bound(occ.begin(), occ.end(), a.index);
      const bool present = it != occ.end() && *it == a.index;
      if (present == (a.kind == Action::Kind::Create)) return false;
      const int before = std::popcount(s.spinor) + static_cast<int>(it - occ.begin());
      if (a.kind == Action::Kind::Create)
        occ.insert(it, a.index);
      else
        occ.erase(it);
      amp *= a.coef * parity_sign(before);
      return true;
    }
    case Action::Kind::Clifford: {
      const int k = a.index / 2;
      if (k >= num_oscillators()) {
        const int n = std::popcount(s.spinor) + static_cast<int>(occ.size());
        amp *= a.coef * kInvSqrt2 * parity_sign(n);
        return true;
      }
      const uint32_t bit = 1u << k;
      const bool set = s.spinor & bit;
      const double sign = parity_sign(std::popcount(s.spinor & (bit - 1)));
      s.spinor ^= bit;
      cplx f = kInvSqrt2 * sign * a.coef;
      if (a.index % 2 == 1) f *= set ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
      amp *= f;
      return true;
    }
  }
  return false;
}

std::string FockSpace::render(const FockState& s) const {
  std::ostringstream os;
  os << "|σ=" << s.spinor << ';';
  for (size_t k = 0; k < s.occupied.size(); ++k)
    os << (k ? "," : " ") << slot_modes_[s.occupied[k]].str(cfg_.geometry);
  os << "⟩";
  return os.str();
}

std::vector<FockState> FockSpace::enumerate(const std::function<bool(const ModeLabel&)>& slot_ok,
                                            int max_particles, HalfInt max_level,
                                            const std::function<bool(uint32_t)>& spinor_ok) const {
  std::vector<int> allowed;
  for (int s = 0; s < num_slots(); ++s)
    if (!slot_ok || slot_ok(slot_modes_[s])) allowed.push_back(s);

  std::vector<std::vector<int>> occs;
  std::vector<int> cur;
  std::function<void(size_t, int)> rec = [&](size_t start, int level2) {
    occs.push_back(cur);
    if (static_cast<int>(cur.size()) >= max_particles) return;
    for (size_t k = start; k < allowed.size(); ++k) {
      const int l2 = level2 + slot_modes_[allowed[k]].m.abs().twice();
      if (l2 > max_level.twice()) continue;
      cur.push_back(allowed[k]);
      rec(k + 1, l2);
      cur.pop_back();
    }
  };
  rec(0, 0);

  std::vector<FockState> out;
  for (uint32_t sp = 0; sp < spinor_dim(); ++sp) {
    if (spinor_ok && !spinor_ok(sp)) continue;
    for (const auto& o : occs) out.push_back({sp, o});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------------- Operator

void Operator::accumulate(cplx coef, const std::array<Action, 2>& ops, int n) {
  if (coef == cplx(0.0)) return;
  Key key{-1, -1, -1, -1};
  for (int j = 0; j < n; ++j) {
    key[2 * j] = static_cast<int>(ops[j].kind);
    key[2 * j + 1] = ops[j].index;
  }
  pending_[key] += coef;
  dirty_ = true;
}

void Operator::add_mode(cplx coef, const ModeLabel& x) {
  Action a = space_->resolve(x);
  const cplx c = coef * a.coef;
  a.coef = 1.0;
  accumulate(c, {a, a}, 1);
}

void Operator::add_product(cplx coef, const ModeLabel& x, const ModeLabel& y) {
  Action a = space_->resolve(x);
  Action b = space_->resolve(y);
  const cplx c = coef * a.coef * b.coef;
  a.coef = b.coef = 1.0;
  using K = Action::Kind;
  if (a.index == b.index && a.kind == b.kind) {
    if (a.kind == K::Clifford) constant_ += 0.5 * c;
    return;
  }
  if (a.index == b.index && a.kind == K::Annihilate && b.kind == K::Create) {
    constant_ += c;
    accumulate(-c, {b, a}, 2);
    return;
  }
  if (a.rank() > b.rank())
    accumulate(-c, {b, a}, 2);
  else
    accumulate(c, {a, b}, 2);
}

void Operator::add(cplx alpha, const Operator& other) {
  constant_ += alpha * other.constant_;
  for (const auto& [k, v] : other.pending_) {
    pending_[k] += alpha * v;
  }
  dirty_ = true;
}

void Operator::finalize() const {
  if (!dirty_) return;
  terms_.clear();
  always_.clear();
  by_slot_.assign(space_->num_slots(), {});
  for (const auto& [k, v] : pending_) {
    if (v == cplx(0.0)) continue;
    Term t;
    t.coef = v;
    t.n = k[2] < 0 ? 1 : 2;
    for (int j = 0; j < t.n; ++j) t.ops[j] = {static_cast<Action::Kind>(k[2 * j]), k[2 * j + 1], 1.0};
    const Action& right = t.ops[t.n - 1];
    const int idx = static_cast<int>(terms_.size());
    if (right.kind == Action::Kind::Annihilate)
      by_slot_[right.index].push_back(idx);
    else
      always_.push_back(idx);
    terms_.push_back(t);
  }
  dirty_ = false;
}

const std::vector<Operator::Term>& Operator::terms() const {
  finalize();
  return terms_;
}

void Operator::apply_into(const FockState& s, cplx amp, StateVector& out) const {
  finalize();
  if (constant_ != cplx(0.0)) out.add(s, constant_ * amp);
  auto run = [&](int idx) {
    const Term& t = terms_[idx];
    FockState st = s;
    cplx a = amp * t.coef;
    for (int j = t.n - 1; j >= 0; --j)
      if (!space_->apply(t.ops[j], st, a)) return;
    out.add(std::move(st), a);
  };
  for (int slot : s.occupied)
    for (int idx : by_slot_[slot]) run(idx);
  for (int idx : always_) run(idx);
}

StateVector Operator::apply(const FockState& s) const {
  StateVector out;
  apply_into(s, 1.0, out);
  return out;
}

StateVector Operator::apply(const StateVector& v) const {
  StateVector out;
  for (const auto& [s, a] : v.entries()) apply_into(s, a, out);
  return out;
}

Eigen::MatrixXcd Operator::matrix(const std::vector<FockState>& basis) const {
  std::unordered_map<FockState, int, FockStateHash> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  const int n = static_cast<int>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    StateVector col = apply(basis[j]);
    for (const auto& [s, a] : col.entries())
      if (auto it = index.find(s); it != index.end()) m(it->second, j) = a;
  }
  return m;
}

// ---------------------------------------------------------------- free helpers

Operator mode_operator(const FockSpace& space, const ModeLabel& x) {
  Operator op(space);
  op.add_mode(1.0, x);
  return op;
}

Operator creator(const FockSpace& space, const ModeLabel& x) {
  auto [y, phase] = space.adjoint(x);
  Operator op(space);
  op.add_mode(phase, y);
  return op;
}

Operator normal_ordered_pair(const FockSpace& space, const ModeLabel& x, const ModeLabel& y) {
  Operator op(space);
  switch (space.resolve(x).kind) {
    case Action::Kind::Annihilate:
      op.add_product(-1.0, y, x);
      break;
    case Action::Kind::Create:
      op.add_product(1.0, x, y);
      break;
    case Action::Kind::Clifford:
      op.add_product(0.5, x, y);
      op.add_product(-0.5, y, x);
      break;
  }
  return op;
}

double check_car(const FockSpace& space, const std::vector<std::pair<ModeLabel, ModeLabel>>& pairs,
                 const std::vector<FockState>& basis) {
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    const Operator bx = mode_operator(space, x);
    const Operator by = mode_operator(space, y);
    const double expected = space.anticommutator(x, y);
    for (const FockState& psi : basis) {
      StateVector v(psi);
      StateVector r = bx.apply(by.apply(v));
      r.axpy(1.0, by.apply(bx.apply(v)));
      r.add(psi, -expected);
      worst = std::max(worst, r.max_abs());
    }
  }
  return worst;
}

}  // namespace km2d
