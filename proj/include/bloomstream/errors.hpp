#pragma once

#include <stdexcept>

namespace bloomstream {

// Invalid or mutually inconsistent configuration, including sketch geometry
// mismatches between filters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the representable domain: non-finite values, grid
// coordinates that do not fit in a signed 64-bit integer.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A timestamp earlier than one already recorded.
class MonotonicityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bloomstream
