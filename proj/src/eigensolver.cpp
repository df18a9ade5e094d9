#include "spectra/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spectra/error.hpp"
#include "spectra/kernels.hpp"

namespace spectra {
namespace {

constexpr double kGridMarginEnergy = 5.0;
constexpr int kRefinedPoints = 4001;

double pivot_floor(const TridiagonalOperator& op) {
  const double off_sq = op.off_diagonal * op.off_diagonal;
  return std::numeric_limits<double>::min() * std::max(1.0, off_sq);
}

}  // namespace

void Grid::validate() const {
  if (!(x_max > x_min) || n_points < 3 || !std::isfinite(x_min) ||
      !std::isfinite(x_max)) {
    throw Error(ErrorKind::invalid_argument,
                "grid needs x_max > x_min and at least 3 points");
  }
}

TridiagonalOperator discretize(const PotentialFn& potential, const Grid& grid) {
  grid.validate();
  const double h = grid.spacing();
  TridiagonalOperator op;
  op.grid = grid;
  op.off_diagonal = -0.5 / (h * h);
  op.diagonal.resize(grid.n_points - 2);
  const double kinetic = 1.0 / (h * h);
  for (int i = 1; i + 1 < grid.n_points; ++i) {
    const double x = grid.x(i);
    const double v = potential(x);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::singular_potential,
                  "potential is not finite at a grid node", x);
    }
    op.diagonal[i - 1] = kinetic + v;
  }
  return op;
}

int sturm_count(const TridiagonalOperator& op, double shift) {
  int count = 0;
  kernels::sturm_counts(op.diagonal, op.off_diagonal * op.off_diagonal,
                        pivot_floor(op), std::span<const double>(&shift, 1),
                        std::span<int>(&count, 1));
  return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k,
                                       double tolerance) {
  if (k < 1 || k > op.dimension()) {
    throw Error(ErrorKind::out_of_range,
                "requested " + std::to_string(k) + " eigenvalues of a " +
                    std::to_string(op.dimension()) + "-dimensional operator");
  }
  // Gershgorin bounds.
  const double radius = 2.0 * std::abs(op.off_diagonal);
  const auto [dmin, dmax] =
      std::minmax_element(op.diagonal.begin(), op.diagonal.end());
  const double span_guard = 1e-12 * std::max(std::abs(*dmin), std::abs(*dmax));
  const double lower = *dmin - radius - span_guard - tolerance;
  const double upper = *dmax + radius + span_guard + tolerance;

  const double off_sq = op.off_diagonal * op.off_diagonal;
  const double pivmin = pivot_floor(op);
  std::vector<double> lo(k, lower), hi(k, upper), mid(k);
  std::vector<int> counts(k);

  // Invariant for target j: count(lo) <= j < count(hi).
  for (int iter = 0; iter < 200; ++iter) {
    bool done = true;
    for (int j = 0; j < k; ++j) {
      mid[j] = 0.5 * (lo[j] + hi[j]);
      if (hi[j] - lo[j] > tolerance) done = false;
    }
    if (done) break;
    kernels::sturm_counts(op.diagonal, off_sq, pivmin, mid, counts);
    for (int j = 0; j < k; ++j) {
      if (hi[j] - lo[j] <= tolerance) continue;
      if (counts[j] > j) {
        hi[j] = mid[j];
      } else {
        lo[j] = mid[j];
      }
    }
  }
  std::vector<double> out(k);
  for (int j = 0; j < k; ++j) out[j] = 0.5 * (lo[j] + hi[j]);
  return out;
}

double rayleigh_quotient(const TridiagonalOperator& op,
                         std::span<const double> samples) {
  if (static_cast<int>(samples.size()) != op.grid.n_points) {
    throw Error(ErrorKind::invalid_argument,
                "Rayleigh quotient needs one sample per grid node");
  }
  const auto interior = samples.subspan(1, op.diagonal.size());
  std::vector<double> t_psi(op.diagonal.size());
  kernels::tridiagonal_matvec(op.diagonal, op.off_diagonal, interior, t_psi);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < interior.size(); ++i) {
    num += interior[i] * t_psi[i];
    den += interior[i] * interior[i];
  }
  return num / den;
}

double default_tolerance(double energy_scale) {
  return energy_scale >= 1.5 ? 4e-3 : 2e-3;
}

VerificationReport verify_spectrum(const SpectrumPrediction& predicted,
                                   const PotentialFn& potential,
                                   const Grid& grid, double tol) {
  grid.validate();
  if (predicted.levels.empty()) {
    throw Error(ErrorKind::invalid_argument, "nothing to verify");
  }
  VerificationReport report;
  report.predicted = predicted.values();
  report.tolerance = tol;
  const int k = static_cast<int>(report.predicted.size());

  const double top = *std::max_element(report.predicted.begin(),
                                       report.predicted.end());
  const double v_left = potential(grid.x_min);
  const double v_right = potential(grid.x_max);
  if (!(v_left >= top + kGridMarginEnergy && v_right >= top + kGridMarginEnergy)) {
    throw Error(ErrorKind::grid_too_narrow,
                "potential at the grid ends must exceed the highest predicted "
                "level by 5 (V(x_min) = " + std::to_string(v_left) +
                    ", V(x_max) = " + std::to_string(v_right) + ")");
  }

  report.level_tolerances.assign(k, tol);
  bool close_pair = false;
  for (int i = 0; i < k; ++i) {
    double gap = std::numeric_limits<double>::infinity();
    if (i > 0) gap = std::min(gap, report.predicted[i] - report.predicted[i - 1]);
    if (i + 1 < k) gap = std::min(gap, report.predicted[i + 1] - report.predicted[i]);
    if (gap < 2.0 * tol) {
      report.level_tolerances[i] = gap / 3.0;
      close_pair = true;
    }
  }
  report.grid = grid;
  if (close_pair && grid.n_points < kRefinedPoints) {
    report.grid.n_points = kRefinedPoints;
  }

  const TridiagonalOperator op = discretize(potential, report.grid);
  report.computed = lowest_eigenvalues(op, k);
  const TridiagonalOperator fine = discretize(potential, report.grid.refined());
  const std::vector<double> refined = lowest_eigenvalues(fine, k);

  report.pass = true;
  for (int i = 0; i < k; ++i) {
    const double err = std::abs(report.computed[i] - report.predicted[i]);
    report.abs_errors.push_back(err);
    report.richardson.push_back(std::abs(report.computed[i] - refined[i]) / 3.0);
    report.discretization_estimate =
        std::max(report.discretization_estimate, report.richardson.back());
    if (!(err <= report.level_tolerances[i])) report.pass = false;
  }
  return report;
}

}  // namespace spectra
