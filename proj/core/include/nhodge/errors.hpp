#pragma once

#include <stdexcept>
#include <string>

namespace nhodge {

/// Raised when two routes that must agree do not; always signals a bug.
class InternalConsistencyError : public std::logic_error {
 public:
  explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace nhodge
