#include "icd/error.hpp"

namespace icd {

namespace {

std::string describe(const std::string& message, const std::string& id, const std::string& field,
                     std::optional<std::size_t> index) {
  std::string out;
  if (!id.empty()) out += "signal '" + id + "': ";
  if (!field.empty()) {
    out += field;
    if (index) out += "[" + std::to_string(*index) + "]";
    out += ": ";
  }
  return out + message;
}

}  // namespace

ParseError::ParseError(std::string message, std::string signal_id, std::string field,
                       std::optional<std::size_t> index)
    : Error(describe(message, signal_id, field, index)),
      signal_id_(std::move(signal_id)),
      field_(std::move(field)),
      index_(index) {}

GridTooLargeError::GridTooLargeError(std::uint64_t grid_size, std::uint64_t cap)
    : Error("enumeration grid of " + std::to_string(grid_size) + " parameter vectors exceeds cap of " +
            std::to_string(cap)),
      grid_size_(grid_size) {}

DecodeError::DecodeError(std::string message, int line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

SolverError::SolverError(SolverFailure kind, std::string message, int exit_code)
    : Error(std::move(message)), kind_(kind), exit_code_(exit_code) {}

}  // namespace icd
