#pragma once

#include <stdexcept>
#include <string>

namespace clonekit {

// Restriction of an operation to a subset it does not map into itself.
struct NotClosedError : std::runtime_error {
  explicit NotClosedError(const std::string& what) : std::runtime_error(what) {}
};

// Query above the arity cap of a generated clone. Raised instead of
// returning false so callers can't mistake "unknown" for "not a member".
struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration or decision request that is outside the supported range.
struct UnsupportedQueryError : std::runtime_error {
  explicit UnsupportedQueryError(const std::string& what) : std::runtime_error(what) {}
};

// Embedded catalog data failed an internal consistency check.
struct CatalogError : std::runtime_error {
  explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace clonekit
