#pragma once

#include <stdexcept>
#include <string>

namespace weilkit {

/// Structured failure codes shared across the library.
enum class ErrorKind {
  not_monic,
  not_separable,
  not_invertible,
  not_galois,
  search_exhausted,
  ring_mismatch,
  degree_budget_exceeded,
  not_well_defined,
  unsupported_base_change,
  no_relative_presentation,
  not_idempotent,
  rank_mismatch,
  budget_exceeded,
  not_local_algebra,
  non_local_tensor,
  not_complete_intersection,
  name_error,
  syntax_error,
  type_mismatch,
  internal,
};

/// All library failures are thrown as Error; `witness` carries the
/// concrete refuting object (a zero divisor, an offending generator, ...)
/// when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string witness = {})
      : std::runtime_error(std::move(message)), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

const char* to_string(ErrorKind kind);

}  // namespace weilkit
