// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "km2d/regulator.hpp"
#include "km2d/sphere_abstract.hpp"
#include "km2d/verifier.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace km2d {

using ojson = nlohmann::ordered_json;

// Reports are built with fixed key order and contain no timestamps, so equal
// inputs serialize to identical bytes.
ojson to_json(const CommutatorReport& r);
ojson to_json(const JacobiReport& r);

void write_csv(std::ostream& out, const CommutatorReport& r);
void write_csv(std::ostream& out, const JacobiReport& r);

struct RegularizationRow {
  std::string descriptor;
  std::string status;  // "ok" or "unresolved"
  double pole = 0.0;
  double finite = 0.0;
  double delta_reg = 0.0;
};

/// Torus NS/R rows, sphere R rows for m in [-m_max, m_max] and the sphere NS row.
std::vector<RegularizationRow> regularization_table(int m_max = 2);
ojson to_json(const std::vector<RegularizationRow>& rows);
void write_csv(std::ostream& out, const std::vector<RegularizationRow>& rows);

/// %.17g, with integers printed without exponent.
std::string format_number(double v);

}  // namespace km2d
