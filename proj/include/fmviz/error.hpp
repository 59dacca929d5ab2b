#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fmviz {

enum class Errc {
  OddDigitCount,
  InvalidHexDigit,
  EmptyCorpus,
  EmptyFile,
  IoFailure,
  NotARedShade,
  OffsetOutOfRange,
  InvalidLayout,
  EncodingFailure,
  CorpusTooSmall,
  BaselineModeMismatch,
  IndexGap,
  SeedTooShort,
  InvalidStage,
  InvalidArgument,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::OddDigitCount: return "OddDigitCount";
    case Errc::InvalidHexDigit: return "InvalidHexDigit";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::IoFailure: return "IoFailure";
    case Errc::NotARedShade: return "NotARedShade";
    case Errc::OffsetOutOfRange: return "OffsetOutOfRange";
    case Errc::InvalidLayout: return "InvalidLayout";
    case Errc::EncodingFailure: return "EncodingFailure";
    case Errc::CorpusTooSmall: return "CorpusTooSmall";
    case Errc::BaselineModeMismatch: return "BaselineModeMismatch";
    case Errc::IndexGap: return "IndexGap";
    case Errc::SeedTooShort: return "SeedTooShort";
    case Errc::InvalidStage: return "InvalidStage";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// Every failure in the library surfaces as this exception. `line` and
// `column` are 1-based and only meaningful for dump parsing errors (0 otherwise).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), code_(code), line_(line), column_(column) {}

  Errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Errc code_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fmviz
