#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spectra {

enum class ErrorKind {
  domain,
  overflow,
  no_convergence,
  singularity,
  singular_potential,
  degenerate_energies,
  denominator_zero,
  ordering_violation,
  grid_too_narrow,
  out_of_range,
  invalid_argument,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this one exception type. The
// kind maps onto the CLI's machine-readable reason; `location` is set when
// the failure is tied to a position on the x axis.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<double> location = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<double>& location() const noexcept { return location_; }

  // One-line reason such as "singular_potential at x≈-0.685".
  std::string reason() const;

 private:
  ErrorKind kind_;
  std::optional<double> location_;
};

}  // namespace spectra
