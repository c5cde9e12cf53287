#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcps {

// Malformed or contract-violating input (bad lengths, out-of-range ids,
// non-positive penalty weights, unparsable files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request exceeds a documented size limit, e.g. the exact oracle cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t limit)
      : std::runtime_error(what), limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mcps
