#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conley {

enum class ErrorKind {
  Ingestion,
  IngestionOutOfBounds,
  MalformedEnvelope,
  InvalidCell,
  ValuesNotAcyclic,
  NotIsolating,
  NotTrapping,
  NotAttractor,
  MalformedSolution,
  InvalidDecomposition,
  ResolutionTooCoarse,
  RestrictInvalid,
  CarrierError,
  ExcisionFailure,
  NotDivisible,
  NegativeQ,
  Internal,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Ingestion: return "IngestionError";
    case ErrorKind::IngestionOutOfBounds: return "IngestionOutOfBounds";
    case ErrorKind::MalformedEnvelope: return "MalformedEnvelope";
    case ErrorKind::InvalidCell: return "InvalidCell";
    case ErrorKind::ValuesNotAcyclic: return "ValuesNotAcyclic";
    case ErrorKind::NotIsolating: return "NotIsolating";
    case ErrorKind::NotTrapping: return "NotTrapping";
    case ErrorKind::NotAttractor: return "NotAttractor";
    case ErrorKind::MalformedSolution: return "MalformedSolution";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::RestrictInvalid: return "RestrictInvalid";
    case ErrorKind::CarrierError: return "CarrierError";
    case ErrorKind::ExcisionFailure: return "ExcisionFailure";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NegativeQ: return "NegativeQ";
    case ErrorKind::Internal: return "InternalError";
  }
  return "UnknownError";
}

/// Process exit code for the CLI. Error classes that share a remedy share a code.
constexpr int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Ingestion:
    case ErrorKind::IngestionOutOfBounds:
    case ErrorKind::MalformedEnvelope:
    case ErrorKind::InvalidCell:
    case ErrorKind::MalformedSolution:
      return 2;
    case ErrorKind::ValuesNotAcyclic: return 3;
    case ErrorKind::NotIsolating:
    case ErrorKind::NotTrapping:
      return 4;
    case ErrorKind::NotAttractor:
    case ErrorKind::InvalidDecomposition:
    case ErrorKind::ResolutionTooCoarse:
    case ErrorKind::RestrictInvalid:
      return 5;
    case ErrorKind::CarrierError:
    case ErrorKind::ExcisionFailure:
      return 6;
    case ErrorKind::NotDivisible:
    case ErrorKind::NegativeQ:
      return 7;
    case ErrorKind::Internal: return 10;
  }
  return 10;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace conley
