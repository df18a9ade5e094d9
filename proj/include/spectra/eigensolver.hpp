#pragma once

#include <span>
#include <vector>

#include "spectra/grid.hpp"
#include "spectra/riccati.hpp"
#include "spectra/transforms.hpp"

namespace spectra {

// Three-point discretization of H = -1/2 d^2/dx^2 + V on the interior nodes
// of a grid, Dirichlet at both ends.
struct TridiagonalOperator {
  Grid grid;
  std::vector<double> diagonal;  // 1/h^2 + V(x_i), i = 1 .. N-2
  double off_diagonal = 0.0;     // -1/(2 h^2)

  int dimension() const { return static_cast<int>(diagonal.size()); }
};

/// Throws Error{singular_potential} if V is not finite at an interior node
/// (errors raised by V itself propagate).
TridiagonalOperator discretize(const PotentialFn& potential, const Grid& grid);

/// Number of eigenvalues <= shift (Sturm sequence count).
int sturm_count(const TridiagonalOperator& op, double shift);

/// The k smallest eigenvalues, ascending, by lockstep Sturm bisection to
/// absolute tolerance `tolerance`. Throws Error{out_of_range} unless
/// 1 <= k <= dimension.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k,
                                       double tolerance = 1e-10);

/// <psi|T|psi> / <psi|psi> over the interior nodes. `samples` holds one value
/// per grid node (boundary values are ignored).
double rayleigh_quotient(const TridiagonalOperator& op,
                         std::span<const double> samples);

struct VerificationReport {
  std::vector<double> predicted;
  std::vector<double> computed;
  std::vector<double> abs_errors;
  std::vector<double> level_tolerances;  // after gap tightening
  std::vector<double> richardson;        // |E_N - E_2N| / 3 per level
  double tolerance = 0.0;
  double discretization_estimate = 0.0;  // max of richardson
  Grid grid;
  bool pass = false;
};

/// Default verification tolerance: 2e-3, or 4e-3 when the energy scale
/// factor is at least 1.5.
double default_tolerance(double energy_scale);

/// Compares predicted levels with the lowest FD eigenvalues of the potential.
/// Levels closer than 2 tol are checked at one third of their gap, and the
/// grid is refined to 4001 points when such a pair exists. Throws
/// Error{grid_too_narrow} unless V at both grid ends exceeds the highest
/// predicted level by at least 5.
VerificationReport verify_spectrum(const SpectrumPrediction& predicted,
                                   const PotentialFn& potential,
                                   const Grid& grid, double tol);

}  // namespace spectra
