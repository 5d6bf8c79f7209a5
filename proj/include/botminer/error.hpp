#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace botminer {

enum class ErrorKind {
  UnknownDataset,
  IoFailure,
  EmptyDataset,
  SchemaMismatch,
  UnmappedClass,
  DetectorUnavailable,
  DegenerateLabels,
  UnknownModel,
  StratificationFailure,
  NothingToReport,
  ConfigError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure the toolkit reports. The kind is what
/// callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace botminer
