#pragma once

// Special functions for the oscillator Riccati solutions: Kummer's confluent
// hypergeometric function 1F1 and log-gamma. All functions are pure.

namespace spectra::specfun {

// Series truncation contract: stop once |term| < 1e-16 |sum| with terms
// decreasing, or fail after this many terms.
inline constexpr int kMaxSeriesTerms = 500;
inline constexpr double kSeriesTolerance = 1e-16;

/// 1F1(a, b; z). For z < 0 the Kummer transformation
/// 1F1(a, b; z) = e^z 1F1(b - a, b; -z) is applied first so the summed series
/// has nonnegative terms whenever b - a and b are positive.
/// Throws Error{domain} for b a non-positive integer, Error{overflow} if the
/// series leaves the representable range, Error{no_convergence} past
/// kMaxSeriesTerms.
double kummer_1f1(double a, double b, double z);

/// d/dz 1F1(a, b; z) = (a / b) 1F1(a + 1, b + 1; z).
double kummer_1f1_dz(double a, double b, double z);

/// k-th z-derivative, (a)_k / (b)_k 1F1(a + k, b + k; z).
double kummer_1f1_derivative(double a, double b, double z, int k);

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Gamma((3 - 2 eps) / 4) / Gamma((1 - 2 eps) / 4), defined for eps < 1/2.
double gamma_ratio(double eps);

}  // namespace spectra::specfun
