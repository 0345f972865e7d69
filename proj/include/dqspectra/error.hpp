#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dqspectra {

enum class ErrorKind {
  InvalidValue,        // NaN or non-finite input to a scalar type
  ZeroQuaternion,
  NotAppreciable,
  NoDualRoot,
  NegativeInput,
  DimensionMismatch,
  NotPartiallyUnitary,
  CompletionFailure,
  NotHermitian,
  NoConvergence,
  SpectrumNotSimple,
  KernelFailure,
  NotPerfect,
  NotPSD,
  InternalAssertion,
  BadRank,
  BadDimensions,
  ParseError,
  DimensionError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::ZeroQuaternion: return "ZeroQuaternion";
    case ErrorKind::NotAppreciable: return "NotAppreciable";
    case ErrorKind::NoDualRoot: return "NoDualRoot";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPartiallyUnitary: return "NotPartiallyUnitary";
    case ErrorKind::CompletionFailure: return "CompletionFailure";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SpectrumNotSimple: return "SpectrumNotSimple";
    case ErrorKind::KernelFailure: return "KernelFailure";
    case ErrorKind::NotPerfect: return "NotPerfect";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::InternalAssertion: return "InternalAssertion";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::BadDimensions: return "BadDimensions";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionError: return "DimensionError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above, so
/// callers (and the CLI exit-code mapping) can branch on the class of error.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dqspectra
