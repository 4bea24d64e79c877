#pragma once

#include <stdexcept>
#include <string>

namespace sqa {

enum class ErrorKind {
  MissingFile,
  MalformedRecord,
  DuplicateId,
  Timeout,
  HttpError,
  MalformedResults,
  NetworkError,
  Disabled,
  AuthorNotFound,
  EndpointError,
  OrcidNotInGraph,
  AmbiguousOrcid,
  AuthorNodeNotFound,
  InstitutionNodeNotFound,
  BackendError,
  EmptyContext,
  EmptyEvaluation,
  BadConfig,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the whole core; the kind carries the
/// contract-level error class so the C API can map it to a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sqa
