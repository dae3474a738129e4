#pragma once

#include <stdexcept>
#include <string>

namespace mhdbox {

// Bad run configuration (missing keys, non-physical parameters, unknown keys).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Snapshot / checkpoint file problems. Each failure mode gets its own kind so
// callers and tests can tell them apart.
class SnapshotError : public std::runtime_error {
 public:
  enum class Kind { BadMagic, VersionMismatch, Truncated, SizeMismatch, Io };

  SnapshotError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Raised when the integrator produces non-finite values.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(double t, const std::string& what)
      : std::runtime_error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

// Exit statuses of the command line tool.
enum ExitStatus : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitIoError = 3,
  kExitBlowupSuspected = 4,
};

}  // namespace mhdbox
