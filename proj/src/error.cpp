#include "spectra/error.hpp"

#include <cstdio>

namespace spectra {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain_error";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::no_convergence: return "no_convergence";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::singular_potential: return "singular_potential";
    case ErrorKind::degenerate_energies: return "degenerate_energies";
    case ErrorKind::denominator_zero: return "denominator_zero";
    case ErrorKind::ordering_violation: return "ordering_violation";
    case ErrorKind::grid_too_narrow: return "grid_too_narrow";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::invalid_argument: return "invalid_argument";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<double> location)
    : std::runtime_error(message), kind_(kind), location_(location) {}

std::string Error::reason() const {
  std::string out(to_string(kind_));
  if (location_) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " at x≈%.3f", *location_);
    out += buf;
  } else {
    out += ": ";
    out += what();
  }
  return out;
}

}  // namespace spectra
