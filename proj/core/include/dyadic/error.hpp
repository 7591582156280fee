#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

/// Raised on violated preconditions (resolution mismatch, degenerate multiplier,
/// non-convex collections, ...). The message names the failed condition.
class DyadicError : public std::runtime_error {
 public:
  explicit DyadicError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dyadic
