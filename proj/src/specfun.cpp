#include "spectra/specfun.hpp"

#include <math.h>

#include <cmath>
#include <limits>
#include <string>

#include "spectra/error.hpp"

namespace spectra::specfun {
namespace {

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && std::floor(v) == v;
}

// Plain power series sum_k (a)_k / (b)_k z^k / k!.
double kummer_series(double a, double b, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    const double ratio = (a + k) / (b + k) * z / (k + 1);
    if (ratio == 0.0) return sum;  // a + k == 0: polynomial
    term *= ratio;
    sum += term;
    if (!std::isfinite(sum)) {
      throw Error(ErrorKind::overflow,
                  "1F1 series exceeds the double range at z = " +
                      std::to_string(z));
    }
    // Only stop once the terms are shrinking for good.
    const double next = std::abs((a + k + 1) / (b + k + 1) * z / (k + 2));
    if (std::abs(term) < kSeriesTolerance * std::abs(sum) && next < 1.0) {
      return sum;
    }
  }
  throw Error(ErrorKind::no_convergence,
              "1F1 series did not converge within " +
                  std::to_string(kMaxSeriesTerms) + " terms (z = " +
                  std::to_string(z) + ")");
}

}  // namespace

double kummer_1f1(double a, double b, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) {
    throw Error(ErrorKind::domain, "1F1 arguments must be finite");
  }
  if (is_nonpositive_integer(b)) {
    throw Error(ErrorKind::domain,
                "1F1 undefined for b a non-positive integer");
  }
  if (z == 0.0 || a == 0.0) return 1.0;
  if (z > 0.0) return kummer_series(a, b, z);
  const double scale = std::exp(z);
  const double value = scale * kummer_series(b - a, b, -z);
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::overflow, "1F1 value exceeds the double range");
  }
  return value;
}

double kummer_1f1_derivative(double a, double b, double z, int k) {
  double coeff = 1.0;
  for (int i = 0; i < k; ++i) {
    if (is_nonpositive_integer(b + i)) {
      throw Error(ErrorKind::domain,
                  "1F1 derivative needs b + i off the non-positive integers");
    }
    coeff *= (a + i) / (b + i);
  }
  if (coeff == 0.0) return 0.0;
  return coeff * kummer_1f1(a + k, b + k, z);
}

double kummer_1f1_dz(double a, double b, double z) {
  return kummer_1f1_derivative(a, b, z, 1);
}

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::domain, "ln_gamma requires x > 0");
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant: std::lgamma writes signgam
#else
  return std::lgamma(x);
#endif
}

double gamma_ratio(double eps) {
  if (!(eps < 0.5)) {
    throw Error(ErrorKind::domain,
                "gamma_ratio requires eps < 1/2 (Gamma argument reaches 0)");
  }
  return std::exp(ln_gamma((3.0 - 2.0 * eps) / 4.0) -
                  ln_gamma((1.0 - 2.0 * eps) / 4.0));
}

}  // namespace spectra::specfun
