#pragma once

#include <stdexcept>
#include <string>

namespace mfc {

/// Bad or out-of-range configuration input (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Geometry mask could not be parsed.
class MaskParseError : public std::runtime_error {
public:
  MaskParseError(const std::string& msg, int row, int col)
      : std::runtime_error(msg + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")"),
        row(row), col(col) {}
  int row;
  int col;
};

/// No fluid-connected inlet->outlet path exists.
class NotPercolatingError : public std::runtime_error {
public:
  explicit NotPercolatingError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A steady-state solve exhausted max_steps above tolerance (CLI exit code 3).
class NonConvergenceError : public std::runtime_error {
public:
  NonConvergenceError(const std::string& msg, double residual)
      : std::runtime_error(msg), residual(residual) {}
  double residual;
};

/// NaN / negative density / runaway field detected.
class BlowupError : public std::runtime_error {
public:
  explicit BlowupError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Biofilm spreading could not find free space (CLI exit code 4).
class CloggedError : public std::runtime_error {
public:
  explicit CloggedError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File I/O failure, carries the path in the message.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mfc
