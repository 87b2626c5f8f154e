#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace genreason {

enum class ErrorCode {
  Syntax,
  UnknownAtom,
  BadAtom,
  UniverseMismatch,
  UniverseTooLarge,
  EmptyDataset,
  BadCsv,
  BadMu,
  BadMagic,
  DimensionMismatch,
  TruncatedFile,
  Io,
  EmptyTrainingSet,
  BadK,
  BadIndex,
  DuplicateIndex,
  NoSuchClass,
  NoValidClass,
  Undefined,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax error";
    case ErrorCode::UnknownAtom: return "unknown atom";
    case ErrorCode::BadAtom: return "bad atom name";
    case ErrorCode::UniverseMismatch: return "universe mismatch";
    case ErrorCode::UniverseTooLarge: return "universe too large";
    case ErrorCode::EmptyDataset: return "empty dataset";
    case ErrorCode::BadCsv: return "bad worlds CSV";
    case ErrorCode::BadMu: return "bad mu";
    case ErrorCode::BadMagic: return "bad magic";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::TruncatedFile: return "truncated file";
    case ErrorCode::Io: return "I/O error";
    case ErrorCode::EmptyTrainingSet: return "empty training set";
    case ErrorCode::BadK: return "bad k";
    case ErrorCode::BadIndex: return "bad index";
    case ErrorCode::DuplicateIndex: return "duplicate index";
    case ErrorCode::NoSuchClass: return "no such class";
    case ErrorCode::NoValidClass: return "no valid class";
    case ErrorCode::Undefined: return "undefined";
  }
  return "error";
}

// Every failure raised by the library carries an ErrorCode so callers
// (the CLI in particular) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  // `line` is 1-based and 0 when the text was a single line.
  SyntaxError(std::size_t position, std::string expected, std::size_t line = 0)
      : Error(ErrorCode::Syntax, (line ? "line " + std::to_string(line) + ", " : std::string()) +
                                     "position " + std::to_string(position) + ": expected " +
                                     expected),
        position_(position),
        line_(line),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::size_t line_;
  std::string expected_;
};

}  // namespace genreason
