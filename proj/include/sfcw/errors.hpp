#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace sfcw {

/// Invalid or inconsistent radar/pipeline configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument (size, window, range) does not hold.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data is missing or inconsistent (e.g. an antenna pair is absent).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed container or raw-recording file.
class FormatError : public DataError {
 public:
  FormatError(const std::string& what, long long byte_offset)
      : DataError(what + " (at byte offset " + std::to_string(byte_offset) + ")"),
        offset_(byte_offset) {}
  long long byte_offset() const noexcept { return offset_; }

 private:
  long long offset_;
};

/// A numerical routine failed (e.g. the eigen-solver did not converge).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningSink = std::function<void(const std::string&)>;

/// Routes non-fatal diagnostics. Defaults to stderr; pass an empty function to restore.
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace sfcw
