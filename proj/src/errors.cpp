#include "scholarqa/errors.hpp"

namespace sqa {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::HttpError: return "HttpError";
    case ErrorKind::MalformedResults: return "MalformedResults";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::Disabled: return "Disabled";
    case ErrorKind::AuthorNotFound: return "AuthorNotFound";
    case ErrorKind::EndpointError: return "EndpointError";
    case ErrorKind::OrcidNotInGraph: return "OrcidNotInGraph";
    case ErrorKind::AmbiguousOrcid: return "AmbiguousOrcid";
    case ErrorKind::AuthorNodeNotFound: return "AuthorNodeNotFound";
    case ErrorKind::InstitutionNodeNotFound: return "InstitutionNodeNotFound";
    case ErrorKind::BackendError: return "BackendError";
    case ErrorKind::EmptyContext: return "EmptyContext";
    case ErrorKind::EmptyEvaluation: return "EmptyEvaluation";
    case ErrorKind::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace sqa
