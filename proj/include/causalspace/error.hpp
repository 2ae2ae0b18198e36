#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace causalspace {

enum class ErrorCode {
  UniverseMismatch,
  UniverseTooLarge,
  OutcomeOutOfRange,
  EmptyCondition,
  InvalidPartition,
  EmptySequence,
  TooManyEvents,
  NoveltyViolation,
  NotAnAtom,
  LevelOutOfRange,
  MissingEntry,
  DuplicateEntry,
  OutOfRange,
  ContradictsTruth,
  InvalidIntervention,
  EventNotMeasurable,
  UndeterminedConditional,
  ZeroEvidence,
  InvalidIndex,
  ZeroMassCondition,
};

std::string_view to_string(ErrorCode code);

/// Engine error. `level` and `index` carry the offending primitive level and
/// atom index (or step / position) when the error has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> level = std::nullopt,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(message), code_(code), level_(level), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> level() const noexcept { return level_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> level_;
  std::optional<std::size_t> index_;
};

}  // namespace causalspace
