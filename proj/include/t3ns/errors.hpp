#pragma once

#include <stdexcept>
#include <string>

namespace t3ns {

/// Stored data violates a structural invariant (e.g. broken Hermitian symmetry).
class DataCorruptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented operation precondition does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two computation routes of the same quantity disagree beyond tolerance.
class InternalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration document was rejected (unknown key, bad type, bad value).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time integration left the stability envelope; carries the last valid time.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

 private:
  double last_valid_time_;
};

}  // namespace t3ns
