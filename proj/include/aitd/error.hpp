#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aitd {

enum class ErrorKind {
  FileNotFound,
  ParseError,
  UnknownLabel,
  NetworkError,
  EmptyResult,
  EmptyCorpus,
  StratificationError,
  EmptyInput,
  InsufficientPool,
  AllTermsFiltered,
  EmptyClass,
  EmptyTrainingSet,
  NonBinaryLabels,
  NonFiniteLoss,
  DimensionMismatch,
  Configuration,
  LengthMismatch,
  UnknownTrueLabel,
  EmptyMatrix,
  SingleClassInput,
  EmptyInstance,
  Io,
  Usage,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace aitd
