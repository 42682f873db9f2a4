#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace combed {

enum class ErrorKind {
  domain,
  non_integrable_input,
  quadrature_failure,
  undefined_here,
  no_convergence,
  divergence_detected,
  epsilon_below_resolution,
  unknown_name,
  bad_params,
  not_available,
  out_of_domain,
  parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind identifies which
/// precondition or numeric check tripped; the message carries context.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace combed
