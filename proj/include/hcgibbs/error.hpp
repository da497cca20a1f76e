#pragma once

#include <stdexcept>
#include <string>

namespace hcgibbs {

/// Input outside an operation's mathematical domain (x <= 1 for h, T <= 0, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// (set, k, i) combination without a reduction.
class UnsupportedCase : public std::invalid_argument {
 public:
  explicit UnsupportedCase(const std::string& what) : std::invalid_argument(what) {}
};

/// Overflow, NaN, or a finder that failed to converge.
class NumericRangeError : public std::range_error {
 public:
  explicit NumericRangeError(const std::string& what) : std::range_error(what) {}
};

/// Exhaustive enumeration refused because the tree exceeds the vertex guard.
class SizeGuardError : public std::length_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::length_error(what) {}
};

}  // namespace hcgibbs
