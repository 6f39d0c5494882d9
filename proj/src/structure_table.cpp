// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/harmonics.hpp"

#include "km2d/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace km2d {

namespace {

inline int lm_index(int l, int m) { return l * l + (m + l); }

}  // namespace

bool StructureTable::allowed(int l1, int l2, int l3) {
  return std::abs(l1 - l2) <= l3 && l3 <= l1 + l2 && (l1 + l2 + l3) % 2 == 0;
}

size_t StructureTable::index(int l1, int m1, int l2, int m2, int l3) const {
  const size_t n_lm = static_cast<size_t>(l_max_ + 1) * (l_max_ + 1);
  return ((static_cast<size_t>(lm_index(l1, m1)) * n_lm) + lm_index(l2, m2)) * (l_max_ + 1) + l3;
}

StructureTable StructureTable::build(int l_max, Execution exec) {
  if (l_max < 0) throw InvalidArgument("structure table needs l_max >= 0");
  StructureTable table;
  table.l_max_ = l_max;
  const int n_lm = (l_max + 1) * (l_max + 1);
  table.values_.assign(static_cast<size_t>(n_lm) * n_lm * (l_max + 1), 0.0);

  // Integrand degree is at most 3 l_max; n nodes integrate degree 2n-1 exactly.
  const QuadratureRule rule = gauss_legendre((3 * l_max) / 2 + 2);
  const int n_nodes = static_cast<int>(rule.nodes.size());
  std::vector<double> q(static_cast<size_t>(n_lm) * n_nodes);
  for (int m = -l_max; m <= l_max; ++m)
    for (int k = 0; k < n_nodes; ++k) {
      const auto col = legendre_Q_column(l_max, m, rule.nodes[k]);
      for (int l = std::abs(m); l <= l_max; ++l)
        q[static_cast<size_t>(lm_index(l, m)) * n_nodes + k] = col[l - std::abs(m)];
    }

  auto fill_row = [&](int idx1) {
    const int l1 = static_cast<int>(std::sqrt(double(idx1)));
    const int m1 = idx1 - l1 * l1 - l1;
    const double* q1 = &q[static_cast<size_t>(idx1) * n_nodes];
    for (int l2 = 0; l2 <= l_max; ++l2)
      for (int m2 = -l2; m2 <= l2; ++m2) {
        const double* q2 = &q[static_cast<size_t>(lm_index(l2, m2)) * n_nodes];
        const int m3 = m1 + m2;
        for (int l3 = std::abs(m3); l3 <= l_max; ++l3) {
          if (!allowed(l1, l2, l3)) continue;
          const double* q3 = &q[static_cast<size_t>(lm_index(l3, m3)) * n_nodes];
          double acc = 0.0;
          for (int k = 0; k < n_nodes; ++k) acc += rule.weights[k] * q1[k] * q2[k] * q3[k];
          table.values_[table.index(l1, m1, l2, m2, l3)] = 0.5 * acc;
        }
      }
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int idx1 = 0; idx1 < n_lm; ++idx1) fill_row(idx1);
  } else {
    for (int idx1 = 0; idx1 < n_lm; ++idx1) fill_row(idx1);
  }
  return table;
}

double StructureTable::operator()(int l1, int m1, int l2, int m2, int l3) const {
  const int worst = std::max({l1, l2, l3});
  if (worst > l_max_) throw TableCoverageError(worst);
  if (l1 < 0 || l2 < 0 || l3 < 0) return 0.0;
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m1 + m2) > l3) return 0.0;
  return values_[index(l1, m1, l2, m2, l3)];
}

void StructureTable::write_csv(std::ostream& out) const {
  out << "l1,m1,l2,m2,l3,m3,value\n";
  char buf[64];
  for (int l1 = 0; l1 <= l_max_; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = 0; l2 <= l_max_; ++l2)
        for (int m2 = -l2; m2 <= l2; ++m2)
          for (int l3 = std::abs(m1 + m2); l3 <= l_max_; ++l3) {
            if (!allowed(l1, l2, l3)) continue;
            std::snprintf(buf, sizeof buf, "%.17g", values_[index(l1, m1, l2, m2, l3)]);
            out << l1 << ',' << m1 << ',' << l2 << ',' << m2 << ',' << l3 << ',' << (m1 + m2)
                << ',' << buf << '\n';
          }
}

double associativity_residual(const StructureTable& t, int l_probe) {
  if (t.l_max() < 3 * l_probe) throw TableCoverageError(3 * l_probe);
  const int L = l_probe;
  double worst = 0.0;
  for (int la = 0; la <= L; ++la)
    for (int lb = 0; lb <= L; ++lb)
      for (int lc = 0; lc <= L; ++lc)
        for (int ma = -la; ma <= la; ++ma)
          for (int mb = -lb; mb <= lb; ++mb)
            for (int mc = -lc; mc <= lc; ++mc)
              for (int le = std::abs(ma + mb + mc); le <= la + lb + lc; ++le) {
                double left = 0.0, right = 0.0;
                for (int l = std::abs(ma + mb); l <= la + lb; ++l)
                  left += t(la, ma, lb, mb, l) * t(l, ma + mb, lc, mc, le);
                for (int l = std::abs(mb + mc); l <= lb + lc; ++l)
                  right += t(lb, mb, lc, mc, l) * t(la, ma, l, mb + mc, le);
                worst = std::max(worst, std::abs(left - right));
              }
  return worst;
}

}  // namespace km2d
