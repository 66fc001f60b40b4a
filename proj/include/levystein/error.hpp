#pragma once

#include <stdexcept>
#include <string>

namespace levystein {

enum class ErrorKind {
  QuadratureFailure,
  InvalidTriplet,
  RepresentationUnavailable,
  InfiniteMean,
  DomainError,
  AssumptionViolated,
  TruncationTooCoarse,
  MissingDerivative,
  SlowDecay,
  TailDivergence,
  NearZeroModulus,
  PhaseUnwrapFailure,
  MissingKFunction,
  NoMuTSampler,
  TailBudgetExceeded,
  GridTooCoarse,
  FitFailure,
  ConfigInvalid,
  Unavailable,
};

const char* kind_name(ErrorKind k);

/// Every numerical or configuration failure surfaces as this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InvalidTriplet: return "InvalidTriplet";
    case ErrorKind::RepresentationUnavailable: return "RepresentationUnavailable";
    case ErrorKind::InfiniteMean: return "InfiniteMean";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::TruncationTooCoarse: return "TruncationTooCoarse";
    case ErrorKind::MissingDerivative: return "MissingDerivative";
    case ErrorKind::SlowDecay: return "SlowDecay";
    case ErrorKind::TailDivergence: return "TailDivergence";
    case ErrorKind::NearZeroModulus: return "NearZeroModulus";
    case ErrorKind::PhaseUnwrapFailure: return "PhaseUnwrapFailure";
    case ErrorKind::MissingKFunction: return "MissingKFunction";
    case ErrorKind::NoMuTSampler: return "NoMuTSampler";
    case ErrorKind::TailBudgetExceeded: return "TailBudgetExceeded";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::FitFailure: return "FitFailure";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::Unavailable: return "Unavailable";
  }
  return "Error";
}

}  // namespace levystein
