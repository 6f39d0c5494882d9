// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/report.hpp"

#include "km2d/errors.hpp"

#include <cmath>
#include <cstdio>

namespace km2d {

std::string format_number(double v) {
  char buf[40];
  if (v == std::floor(v) && std::abs(v) < 1e15)
    std::snprintf(buf, sizeof buf, "%.0f", v);
  else
    std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string sectors(const SectorConfig& cfg) {
  if (cfg.geometry == Geometry::Sphere) return to_string(cfg.z_sector);
  return to_string(cfg.z_sector) + "," + to_string(cfg.angular_sector);
}

ojson cutoffs(const SectorConfig& cfg) {
  ojson c = ojson::object();
  if (cfg.geometry == Geometry::Torus) {
    c["m"] = cfg.m_cut.str();
    c["p"] = cfg.p_cut.str();
  } else {
    c["l"] = cfg.l_cut.str();
  }
  return c;
}

ojson lt_json(const CommutatorReport& r) {
  if (r.lt_samples.empty()) return nullptr;
  ojson samples = ojson::array();
  for (const LtSample& s : r.lt_samples) {
    ojson j;
    j["m"] = s.m;
    j["p"] = s.p;
    j["n"] = s.n;
    j["q"] = s.q;
    j["a"] = s.a + 1;
    j["measured"] = s.measured ? ojson(*s.measured) : ojson(nullptr);
    j["minus_n"] = s.minus_n;
    j["minus_p"] = s.minus_p;
    samples.push_back(std::move(j));
  }
  ojson out;
  out["matches_minus_n"] = r.lt_matches_minus_n;
  out["matches_printed_minus_p"] = r.lt_matches_printed_minus_p;
  out["samples"] = std::move(samples);
  return out;
}

}  // namespace

ojson to_json(const CommutatorReport& r) {
  ojson j;
  j["task"] = r.task;
  j["geometry"] = to_string(r.cfg.geometry);
  j["sectors"] = sectors(r.cfg);
  j["d"] = r.cfg.d;
  j["rep"] = r.rep;
  j["cutoffs"] = cutoffs(r.cfg);
  j["window"] = r.window.str();
  j["method"] = to_string(r.method);
  j["tol"] = r.tol;
  ojson brackets = ojson::array();
  for (const BracketResult& b : r.brackets) {
    ojson e;
    e["lhs"] = b.lhs;
    e["rhs"] = b.rhs;
    e["residual"] = b.residual;
    e["central_measured"] = b.central_measured;
    e["central_expected"] = b.central_expected;
    e["pass"] = b.pass;
    if (b.lt_fit) e["lt_fit"] = *b.lt_fit;
    if (b.residual > 0.0) e["worst_element"] = b.worst_element;
    brackets.push_back(std::move(e));
  }
  j["brackets"] = std::move(brackets);
  if (r.has_charges) {
    j["charges"] = {{"c_measured", r.charges.c_measured},
                    {"k_measured", r.charges.k_measured},
                    {"c_expected", r.charges.c_expected},
                    {"k_expected", r.charges.k_expected}};
  } else {
    j["charges"] = nullptr;
  }
  j["lt_coefficient_measured"] = lt_json(r);
  j["max_residual"] = r.max_residual;
  j["pass"] = r.pass;
  return j;
}

ojson to_json(const JacobiReport& r) {
  ojson j;
  j["task"] = "sphere-abstract";
  j["l_probe"] = r.l_probe;
  j["lmax"] = r.table_l_max;
  j["triples"] = r.triples;
  ojson fam = ojson::object();
  for (const auto& [k, v] : r.max_by_family) fam[k] = v;
  j["max_by_family"] = std::move(fam);
  j["max_residual"] = r.max_residual;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  return j;
}

void write_csv(std::ostream& out, const CommutatorReport& r) {
  out << "lhs,rhs,residual,central_measured,central_expected,pass\n";
  for (const BracketResult& b : r.brackets)
    out << '"' << b.lhs << "\",\"" << b.rhs << "\"," << format_number(b.residual) << ','
        << format_number(b.central_measured) << ',' << format_number(b.central_expected) << ','
        << (b.pass ? "true" : "false") << '\n';
}

void write_csv(std::ostream& out, const JacobiReport& r) {
  out << "family,max_residual\n";
  for (const auto& [k, v] : r.max_by_family) out << k << ',' << format_number(v) << '\n';
}

std::vector<RegularizationRow> regularization_table(int m_max) {
  std::vector<DeltaDescriptor> descs;
  for (Boundary b : {Boundary::NS, Boundary::R}) descs.push_back({Geometry::Torus, b, 0});
  for (int m = -m_max; m <= m_max; ++m) descs.push_back({Geometry::Sphere, Boundary::R, m});
  descs.push_back({Geometry::Sphere, Boundary::NS, 0});

  std::vector<RegularizationRow> rows;
  for (const DeltaDescriptor& d : descs) {
    RegularizationRow row;
    row.descriptor = d.str();
    try {
      const LaurentData l = heat_sum_finite_part(delta_heat_sum(d));
      row.pole = l.pole;
      row.finite = l.finite;
      row.delta_reg = delta_reg_zero(d);
      row.status = "ok";
    } catch (const UnresolvedPrescription&) {
      row.status = "unresolved";
      row.pole = row.finite = row.delta_reg = std::nan("");
    }
    rows.push_back(row);
  }
  return rows;
}

ojson to_json(const std::vector<RegularizationRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) {
    ojson j;
    j["descriptor"] = r.descriptor;
    j["status"] = r.status;
    if (r.status == "ok") {
      j["pole"] = r.pole;
      j["finite"] = r.finite;
      j["delta_reg"] = r.delta_reg;
    }
    arr.push_back(std::move(j));
  }
  ojson out;
  out["task"] = "regularization";
  out["rows"] = std::move(arr);
  return out;
}

void write_csv(std::ostream& out, const std::vector<RegularizationRow>& rows) {
  out << "descriptor,status,pole,finite,delta_reg\n";
  for (const auto& r : rows) {
    out << r.descriptor << ',' << r.status;
    if (r.status == "ok")
      out << ',' << format_number(r.pole) << ',' << format_number(r.finite) << ','
          << format_number(r.delta_reg);
    else
      out << ",,,";
    out << '\n';
  }
}

}  // namespace km2d
