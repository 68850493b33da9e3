#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace macp {

// Raised when an exhaustive routine would exceed its configured work cap.
// `cardinality` carries the size of the search space that was refused
// (saturated at UINT64_MAX).
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t cardinality)
      : std::runtime_error(what), cardinality_(cardinality) {}

  std::uint64_t cardinality() const noexcept { return cardinality_; }

 private:
  std::uint64_t cardinality_;
};

}  // namespace macp
