#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectra/grid.hpp"
#include "spectra/riccati.hpp"
#include "spectra/taylor.hpp"

namespace spectra {

// Coordinate dilation x -> x / q with q = e^{-lambda}. Only q is stored;
// lambda is always derived from it.
class ScalingParam {
 public:
  ScalingParam() = default;
  // Throws Error{invalid_argument} unless q is finite and positive.
  explicit ScalingParam(double q);
  static ScalingParam from_lambda(double lambda);

  double q() const { return q_; }
  double lambda() const { return -std::log(q_); }

 private:
  double q_ = 1.0;
};

enum class TransformKind { first_order, second_order, scaled_first, scaled_second };

std::string to_string(TransformKind kind);
// Accepts "first-order", "second-order", "scaled-first", "scaled-second"
// (underscores also accepted).
std::optional<TransformKind> parse_transform_kind(const std::string& name);

struct TransformSpec {
  TransformKind kind = TransformKind::first_order;
  FactorizationConfig f1;
  std::optional<FactorizationConfig> f2;
  std::optional<ScalingParam> s1;
  std::optional<ScalingParam> s2;

  static TransformSpec first_order(FactorizationConfig f1);
  static TransformSpec second_order(FactorizationConfig f1,
                                    FactorizationConfig f2);
  static TransformSpec scaled_first(FactorizationConfig f1, ScalingParam s1);
  static TransformSpec scaled_second(FactorizationConfig f1, ScalingParam s1,
                                     FactorizationConfig f2, ScalingParam s2);

  bool two_step() const {
    return kind == TransformKind::second_order ||
           kind == TransformKind::scaled_second;
  }
  // Total dilation Q: 1, q1 or q1 q2.
  double total_scale() const;
  // Factor applied to every level of the unscaled construction, Q^-2.
  double energy_scale() const { return 1.0 / (total_scale() * total_scale()); }

  // Structural checks: required parameters present, eps < 1/2, finite
  // values, eps2 < eps1 with |eps1 - eps2| > 1e-9 for two-step kinds.
  // Throws Error{invalid_argument | ordering_violation | degenerate_energies}.
  void validate() const;
};

struct CertificationOptions {
  double x_lo = -12.0;
  double x_hi = 12.0;
  int points = 2401;
};

// A constructed potential. Evaluation outside certified_domain throws
// Error{out_of_range}.
class GeneratedPotential {
 public:
  GeneratedPotential(std::optional<TransformSpec> spec, PotentialFn evaluator,
                     std::pair<double, double> certified_domain,
                     std::vector<NodelessCertificate> certificates);

  double operator()(double x) const;

  const std::optional<TransformSpec>& spec() const { return spec_; }
  std::pair<double, double> certified_domain() const { return domain_; }
  const std::vector<NodelessCertificate>& certificates() const {
    return certificates_;
  }
  // The evaluator as a plain function object (still domain-checked).
  PotentialFn as_function() const;

 private:
  std::optional<TransformSpec> spec_;
  PotentialFn evaluator_;
  std::pair<double, double> domain_;
  std::vector<NodelessCertificate> certificates_;
};

enum class LevelOrigin { created, inherited };

struct SpectrumLevel {
  double value = 0.0;
  LevelOrigin origin = LevelOrigin::inherited;
  int index = 0;  // i of eps_i for created levels, n for inherited ones
  double scale = 1.0;

  std::string label() const;  // "created(eps1)" or "inherited(3)"
};

struct SpectrumPrediction {
  std::vector<SpectrumLevel> levels;  // strictly increasing

  std::vector<double> values() const;
  int created_count() const;
};

struct GroundStateFunction {
  Grid grid;
  std::vector<double> samples;  // unit L2 norm under the trapezoid rule
  double energy = 0.0;
};

/// Chaining (finite-difference) formula: from two solutions alpha(., e1),
/// alpha(., e2) on the same base potential, the solution at e2 on
/// V1 = V - alpha'(., e1):
///   alpha2 = -alpha(e1) - 2 (e1 - e2) / (alpha(e1) - alpha(e2)).
/// Internally alpha2 = (W / psi1)' / (W / psi1) with the Wronskian
/// W = psi1' psi2 - psi1 psi2', so poles of alpha(e2) are harmless.
/// Throws Error{degenerate_energies} when |e1 - e2| <= 1e-9 and
/// Error{denominator_zero} when W vanishes on the certification interval.
RiccatiSolution chain_alpha(const RiccatiSolution& at_e1,
                            const RiccatiSolution& at_e2,
                            const CertificationOptions& cert = {});

/// V1(x) = V0(x) - alpha'(x) for any nodeless Riccati solution.
GeneratedPotential first_order_potential(const RiccatiSolution& sol,
                                         const CertificationOptions& cert = {});

/// V2(x) = V0(x) + d/dx [2 (e1 - e2) / (alpha(x, e1) - alpha(x, e2))] for two
/// solutions on the same base. No energy ordering is imposed here.
GeneratedPotential second_order_potential(const RiccatiSolution& at_e1,
                                          const RiccatiSolution& at_e2,
                                          const CertificationOptions& cert = {});

// Oscillator-based constructions. Each runs a nodeless scan of the relevant
// denominator over the certification interval (in the unscaled coordinate)
// and throws Error{singular_potential} if it has a zero. The parameter
// prechecks |nu1| < 1 (and |nu2| > 1 for two-step kinds) are applied after
// the scan.
GeneratedPotential first_order_potential(const FactorizationConfig& f1,
                                         const CertificationOptions& cert = {});
GeneratedPotential second_order_potential(const FactorizationConfig& f1,
                                          const FactorizationConfig& f2,
                                          const CertificationOptions& cert = {});
GeneratedPotential scaled_first_potential(const FactorizationConfig& f1,
                                          const ScalingParam& s1,
                                          const CertificationOptions& cert = {});
GeneratedPotential scaled_second_potential(const FactorizationConfig& f1,
                                           const ScalingParam& s1,
                                           const FactorizationConfig& f2,
                                           const ScalingParam& s2,
                                           const CertificationOptions& cert = {});
GeneratedPotential build_potential(const TransformSpec& spec,
                                   const CertificationOptions& cert = {});

/// Created levels plus the first n_max inherited oscillator levels, all
/// multiplied by the spec's energy scale, ascending.
SpectrumPrediction predict_spectrum(const TransformSpec& spec, int n_max);

/// exp(-int_0^x alpha1) sampled on the grid (trapezoid rule), normalized.
/// One-step kinds only.
GroundStateFunction ground_state_fn(const TransformSpec& spec, const Grid& grid);

/// f(x) = q^2 alpha1'(x) + q^2 V0(x) - V0(x / q) with
/// alpha1(x) = alpha(x / q) / q and V0 the oscillator.
double f_diagnostic(double x, const FactorizationConfig& f1,
                    const ScalingParam& s1);

/// Taylor expansion of a test function about a point (order >= 3 for
/// one-step kinds, 4 for two-step kinds).
using TestFunction = std::function<Taylor(double)>;

/// exp(-(y - center)^2 / (2 width^2)) expanded to fourth order.
TestFunction gaussian_test_function(double center = 0.0, double width = 1.0);

/// max over probes of |(H~ L - c L H0) phi| where L is the (composed)
/// intertwiner A+ with the dilation phi(y) -> Q^{-1/2} phi(x / Q), H~ the
/// Hamiltonian of the constructed potential and c = Q^-2.
double intertwining_residual(const TransformSpec& spec,
                             const TestFunction& test_fn,
                             const std::vector<double>& probes);

/// One-step kinds: max over probes of the two factorization identities
/// H0 = q^2 A A+ + eps1 (in the base coordinate) and
/// H~1 = A+ A + q^-2 eps1 (in x), applied to the test function.
double factorization_residual(const TransformSpec& spec,
                              const TestFunction& test_fn,
                              const std::vector<double>& probes);

/// Number of strict interior local minima of V sampled on the grid.
int count_local_minima(const PotentialFn& potential, const Grid& grid);

}  // namespace spectra
