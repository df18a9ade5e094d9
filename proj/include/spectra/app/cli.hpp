#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spectra/grid.hpp"
#include "spectra/transforms.hpp"

namespace spectra::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one spectra-forge invocation. `args` excludes the program name.
/// Returns the process exit status; a one-line reason is written to `err`
/// for every non-zero status.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

// "eps1=-q1^2/2" and friends: target = coefficient * q1^2.
struct Lock {
  std::string target;  // "eps1" or "eps2"
  double coefficient = 0.0;
  std::string text;
};

/// Parses a lock expression; nullopt if it is not of the accepted form
/// (eps1|eps2) = [sign][c *] q1^2 [/ d].
std::optional<Lock> parse_lock(const std::string& text);

/// x,V samples of a potential on a grid, 17 significant digits.
std::string render_potential_csv(const GeneratedPotential& potential,
                                 const Grid& grid);

/// Certification interval covering a grid of half-width grid_l.
CertificationOptions certification_for(double grid_l);

}  // namespace spectra::cli
