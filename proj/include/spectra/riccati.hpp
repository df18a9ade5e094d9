#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "spectra/grid.hpp"
#include "spectra/taylor.hpp"

namespace spectra {

using PotentialFn = std::function<double(double)>;

/// V0(x) = x^2 / 2.
inline double oscillator_potential(double x) { return 0.5 * x * x; }

/// Ground level of the oscillator base, E0 = 1/2.
inline constexpr double kOscillatorGroundEnergy = 0.5;

// A factorization energy and the constant mixing the even and odd oscillator
// solutions at that energy.
struct FactorizationConfig {
  double eps = 0.0;
  double nu = 0.0;
};

enum class RiccatiBackend { analytic_oscillator, numeric, chained };

// A solution psi of -psi''/2 + V psi = eps psi, exposed only through local
// Taylor expansions. Each expansion may carry an arbitrary positive factor
// that depends on the expansion point; every quantity built from it
// (alpha = psi'/psi, Wronskian ratios, sign) is invariant under that factor.
class SolutionSource {
 public:
  virtual ~SolutionSource() = default;
  virtual Taylor psi(double x, int order) const = 0;
  // Interval on which psi can be evaluated.
  virtual std::pair<double, double> domain() const = 0;
};

struct AlphaValue {
  double alpha = 0.0;
  double alpha_prime = 0.0;
};

// alpha(x, eps) = psi'/psi solving alpha' + alpha^2 = 2 (V(x) - eps) for a
// given base potential V. Immutable and cheap to copy.
class RiccatiSolution {
 public:
  RiccatiSolution(double eps, RiccatiBackend backend,
                  std::shared_ptr<const SolutionSource> source, PotentialFn base,
                  std::optional<FactorizationConfig> config = std::nullopt);

  double eps() const { return eps_; }
  RiccatiBackend backend() const { return backend_; }
  const std::optional<FactorizationConfig>& config() const { return config_; }
  const PotentialFn& base_potential() const { return base_; }
  std::pair<double, double> domain() const { return source_->domain(); }

  Taylor psi(double x, int order) const { return source_->psi(x, order); }

  // psi / (|psi| + |psi'|): sign of psi with a scale-free magnitude.
  double normalized_psi(double x) const;

  // Expansion of alpha about x. Throws Error{singularity} when psi vanishes
  // there (|psi| < 1e-13 (|psi| + |psi'|)).
  Taylor alpha(double x, int order) const;
  AlphaValue evaluate(double x) const;

  // Same alpha, reported energy replaced. Only meaningful for diagnostics.
  RiccatiSolution with_energy_label(double eps) const;

 private:
  double eps_;
  RiccatiBackend backend_;
  std::shared_ptr<const SolutionSource> source_;
  PotentialFn base_;
  std::optional<FactorizationConfig> config_;
};

/// psi'(0) / psi(0) of the oscillator solution mixed by nu:
/// 2 nu Gamma((3 - 2 eps)/4) / Gamma((1 - 2 eps)/4).
double oscillator_slope(const FactorizationConfig& config);

/// Analytic solution on V0 = x^2/2 built from Kummer functions. Requires
/// eps < 1/2 and finite nu.
RiccatiSolution oscillator_solution(const FactorizationConfig& config);

/// alpha and alpha' of the analytic oscillator solution at x.
AlphaValue alpha_oscillator(double x, const FactorizationConfig& config);

struct NodelessCertificate {
  double x_lo = 0.0;
  double x_hi = 0.0;
  int grid_points = 0;
  bool nodeless = true;
  std::optional<double> zero;  // first zero found, bisected to 1e-10
};

/// Sign scan of an arbitrary function on [x_lo, x_hi]: n grid samples plus a
/// golden-section refinement around every local minimum of |f|. Small |f|
/// without a sign change is not reported as a zero.
NodelessCertificate nodeless_scan(const std::function<double(double)>& f,
                                  double x_lo, double x_hi, int n);

/// Scan of the oscillator solution u for the given config.
NodelessCertificate nodeless_scan(const FactorizationConfig& config,
                                  double x_lo, double x_hi, int n);

struct NumericOptions {
  double max_step = 1e-3;
  bool require_nodeless = true;
};

/// Integrates -psi''/2 + V psi = eps psi outward from x = 0 with psi(0) = 1,
/// psi'(0) = psi0_slope (classical RK4, step <= max_step) over the span of a
/// grid symmetric about 0. Between integration nodes psi is a quintic Hermite
/// interpolant. Throws Error{singularity} if psi changes sign and
/// require_nodeless is set.
RiccatiSolution alpha_numeric(const PotentialFn& potential, double eps,
                              double psi0_slope, const Grid& grid,
                              const NumericOptions& options = {});

/// alpha'(x) + alpha(x)^2 - 2 (V(x) - eps).
double riccati_residual(const RiccatiSolution& sol, double x);

}  // namespace spectra
