#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace distwsd {

enum class ErrorKind {
  MalformedLine,
  NonContiguousIds,
  HeadOutOfRange,
  UnknownFeature,
  CorruptIndex,
  PosMismatch,
  BothFeatureless,
  BadHeader,
  DimensionMismatch,
  ZeroVector,
  MissingVector,
  MalformedRecord,
  DuplicateSenseId,
  DuplicatePosition,
  NoSenses,
  UnmatchedPrediction,
  MissingResource,
  Io,
};

std::string_view to_string(ErrorKind kind);

// All recoverable failures raised by the library. Invariant violations use
// std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace distwsd
