#include "distwsd/error.hpp"

namespace distwsd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::NonContiguousIds: return "NonContiguousIds";
    case ErrorKind::HeadOutOfRange: return "HeadOutOfRange";
    case ErrorKind::UnknownFeature: return "UnknownFeature";
    case ErrorKind::CorruptIndex: return "CorruptIndex";
    case ErrorKind::PosMismatch: return "PosMismatch";
    case ErrorKind::BothFeatureless: return "BothFeatureless";
    case ErrorKind::BadHeader: return "BadHeader";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::MissingVector: return "MissingVector";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::DuplicateSenseId: return "DuplicateSenseId";
    case ErrorKind::DuplicatePosition: return "DuplicatePosition";
    case ErrorKind::NoSenses: return "NoSenses";
    case ErrorKind::UnmatchedPrediction: return "UnmatchedPrediction";
    case ErrorKind::MissingResource: return "MissingResource";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace distwsd
