#include "aitd/error.hpp"

namespace aitd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::StratificationError: return "StratificationError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InsufficientPool: return "InsufficientPool";
    case ErrorKind::AllTermsFiltered: return "AllTermsFiltered";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorKind::NonBinaryLabels: return "NonBinaryLabels";
    case ErrorKind::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Configuration: return "Configuration";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::UnknownTrueLabel: return "UnknownTrueLabel";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::SingleClassInput: return "SingleClassInput";
    case ErrorKind::EmptyInstance: return "EmptyInstance";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace aitd
