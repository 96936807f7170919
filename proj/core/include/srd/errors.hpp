#pragma once

#include <stdexcept>
#include <string>

namespace srd {

/// Raised when an iterative or quadrature routine cannot reach its target
/// tolerance. The message carries the achieved tolerance so callers can
/// report it instead of silently truncating.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace srd
