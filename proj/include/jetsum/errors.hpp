#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jetsum {

// Operands belong to different field/ring instances. Always a caller bug.
struct FieldMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

// An operation would have to read Laurent coefficients below the stored
// precision floor. Construct the operand with a lower floor and retry.
struct InsufficientPrecision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration would visit more points than the configured budget allows.
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(std::string what, std::uint64_t needed, std::uint64_t budget)
      : std::runtime_error(std::move(what)), needed(needed), budget(budget) {}
  std::uint64_t needed;
  std::uint64_t budget;
};

// An integer accumulator left the exactly-representable range. Parameters are
// beyond desk scale; the result must not wrap silently.
struct CountOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// The minimal-denominator search ran past its guaranteed bound without
// finding an approximation. Would falsify the covering claim; never clamped.
struct CoverageViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A quantity that must come out as an exact integer did not. Signals an
// implementation bug, never an expected condition.
struct NonIntegralResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonIntegralQuotient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad literal in a field/form/element specification string.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jetsum
