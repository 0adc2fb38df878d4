#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ultra {

enum class ErrorCode {
  // matrix validation
  NotSquare,
  LabelMismatch,
  AsymmetricEntry,
  NonzeroDiagonal,
  NonpositiveOffDiagonal,
  NonFiniteEntry,
  TooFewPoints,
  TooLarge,
  NotAmenableOnSpectrum,
  // function specs
  SyntaxError,
  DomainGap,
  NegativeValueRisk,
  NegativeInput,
  InvalidValue,
  // generators / embeddings
  DuplicateValue,
  DuplicatePoint,
  NotInDomain,
  InvalidParameters,
  NotUltrametric,
  WrongSize,
  SpectrumNotEmbeddable,
  // orchestration
  PreconditionFailed,
  InvalidArgument,
  IoError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::AsymmetricEntry: return "AsymmetricEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NonpositiveOffDiagonal: return "NonpositiveOffDiagonal";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotAmenableOnSpectrum: return "NotAmenableOnSpectrum";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DomainGap: return "DomainGap";
    case ErrorCode::NegativeValueRisk: return "NegativeValueRisk";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::DuplicateValue: return "DuplicateValue";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::NotUltrametric: return "NotUltrametric";
    case ErrorCode::WrongSize: return "WrongSize";
    case ErrorCode::SpectrumNotEmbeddable: return "SpectrumNotEmbeddable";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

struct MatrixPos {
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const MatrixPos&) const = default;
};

/// Every library failure is reported through this exception. `code` is the
/// stable machine-readable part; `what()` carries the human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Error(ErrorCode code, const std::string& message, MatrixPos pos)
      : std::runtime_error(std::string(to_string(code)) + ": " + message + " at (" +
                           std::to_string(pos.row) + "," + std::to_string(pos.col) + ")"),
        code_(code),
        pos_(pos) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<MatrixPos>& position() const noexcept { return pos_; }

 private:
  ErrorCode code_;
  std::optional<MatrixPos> pos_;
};

/// Parse failures additionally carry the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, std::size_t offset, const std::string& message)
      : Error(code, message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace ultra
