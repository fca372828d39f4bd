// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rislink {

// Bad input: parameter outside its mathematical domain. CLI maps this to exit 2.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative routine ran out of budget before meeting its tolerance.
// CLI maps this to exit 3.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A quadrature/inversion routine cannot certify the requested tolerance.
// Carries the best estimate it had so callers can decide what to do with it.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double partial)
      : std::runtime_error(what), partial_estimate(partial) {}
  double partial_estimate;
};

}  // namespace rislink
