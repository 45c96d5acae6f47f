#pragma once

#include <stdexcept>
#include <string>

namespace sectorzero {

enum class ErrorCode {
  // taxonomy
  InvalidCodeLength,
  InvalidCodeCharacter,
  InvalidLabelSet,
  // corpus
  IoError,
  MalformedRecord,
  DuplicateId,
  UnknownLabel,
  BadLexiconEntry,
  // enrich
  EmptyCorpus,
  EmptyRanking,
  // zeroshot
  BadTemplate,
  EmptyLabelSet,
  BackendUnavailable,
  ProtocolError,
  CacheCorrupt,
  // eval
  LengthMismatch,
  EmptyEvaluation,
  MissingPrediction,
  // cli
  InvalidConfig,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidCodeLength: return "InvalidCodeLength";
    case ErrorCode::InvalidCodeCharacter: return "InvalidCodeCharacter";
    case ErrorCode::InvalidLabelSet: return "InvalidLabelSet";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::BadLexiconEntry: return "BadLexiconEntry";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyRanking: return "EmptyRanking";
    case ErrorCode::BadTemplate: return "BadTemplate";
    case ErrorCode::EmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyEvaluation: return "EmptyEvaluation";
    case ErrorCode::MissingPrediction: return "MissingPrediction";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

// Usage, configuration, and input-data problems exit with 2; backend and
// runtime failures with 3.
inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BackendUnavailable:
    case ErrorCode::ProtocolError:
    case ErrorCode::EmptyEvaluation:
      return 3;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sectorzero
