#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace icd {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input data. Carries the offending signal id and field when known.
class ParseError : public Error {
public:
  ParseError(std::string message, std::string signal_id = {}, std::string field = {},
             std::optional<std::size_t> index = std::nullopt);

  const std::string& signal_id() const noexcept { return signal_id_; }
  const std::string& field() const noexcept { return field_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

private:
  std::string signal_id_;
  std::string field_;
  std::optional<std::size_t> index_;
};

class DomainError : public Error {
public:
  using Error::Error;
};

// Requested exhaustive enumeration exceeds the configured cap.
class GridTooLargeError : public Error {
public:
  GridTooLargeError(std::uint64_t grid_size, std::uint64_t cap);
  std::uint64_t grid_size() const noexcept { return grid_size_; }

private:
  std::uint64_t grid_size_;
};

// Solver output could not be mapped back onto the parameter grid.
class DecodeError : public Error {
public:
  DecodeError(std::string message, int line = 0);
  int line() const noexcept { return line_; }

private:
  int line_;
};

enum class SolverFailure { NonZeroExit, Timeout, MissingBinary, Io };

class SolverError : public Error {
public:
  SolverError(SolverFailure kind, std::string message, int exit_code = 0);
  SolverFailure kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return exit_code_; }

private:
  SolverFailure kind_;
  int exit_code_;
};

}  // namespace icd
