// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace km2d {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user-supplied value: out-of-domain index, parity violation, unknown name.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A mode outside the Fock-space cutoffs was requested from the CAR layer.
class CutoffError : public Error {
 public:
  using Error::Error;
};

/// Probe window not covered by the cutoffs for the operators being compared.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Structure table (or projection table) does not reach a required degree.
class TableCoverageError : public Error {
 public:
  explicit TableCoverageError(int missing_degree)
      : Error("structure table does not cover degree " + std::to_string(missing_degree)),
        missing_degree_(missing_degree) {}
  int missing_degree() const { return missing_degree_; }

 private:
  int missing_degree_;
};

/// The regularisation prescription is not determined for this sector.
class UnresolvedPrescription : public Error {
 public:
  using Error::Error;
};

}  // namespace km2d
