#include "combed/error.hpp"

namespace combed {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::non_integrable_input: return "NonIntegrableInput";
    case ErrorKind::quadrature_failure: return "QuadratureFailure";
    case ErrorKind::undefined_here: return "UndefinedHere";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::divergence_detected: return "DivergenceDetected";
    case ErrorKind::epsilon_below_resolution: return "EpsilonBelowResolution";
    case ErrorKind::unknown_name: return "UnknownName";
    case ErrorKind::bad_params: return "BadParams";
    case ErrorKind::not_available: return "NotAvailable";
    case ErrorKind::out_of_domain: return "OutOfDomain";
    case ErrorKind::parse: return "ParseError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace combed
