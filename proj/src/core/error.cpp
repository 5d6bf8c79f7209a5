#include "botminer/error.hpp"

namespace botminer {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownDataset: return "UnknownDataset";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::UnmappedClass: return "UnmappedClass";
    case ErrorKind::DetectorUnavailable: return "DetectorUnavailable";
    case ErrorKind::DegenerateLabels: return "DegenerateLabels";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::StratificationFailure: return "StratificationFailure";
    case ErrorKind::NothingToReport: return "NothingToReport";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace botminer
