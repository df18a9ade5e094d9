#include "spectra/app/oracles.hpp"

#include <cmath>
#include <numbers>

namespace spectra::oracles {
namespace {

using quad = __float128;

quad quad_abs(quad v) { return v < 0 ? -v : v; }

// pi to about 32 digits as a sum of two doubles.
const quad kPi = static_cast<quad>(3.141592653589793) +
                 static_cast<quad>(1.2246467991473532e-16);

quad quad_sqrt(quad v) {
  quad r = std::sqrt(static_cast<double>(v));
  for (int i = 0; i < 4; ++i) r = 0.5 * (r + v / r);
  return r;
}

}  // namespace

double erf_series(double x) {
  const quad xq = x;
  const quad x2 = xq * xq;
  quad power = xq;  // (-1)^n x^(2n+1) / n!
  quad sum = 0;
  for (int n = 0; n < 400; ++n) {
    const quad term = power / (2 * n + 1);
    sum += term;
    if (n > 2 && quad_abs(term) < 1e-34 * quad_abs(sum)) break;
    power *= -x2 / (n + 1);
  }
  return static_cast<double>(2 * sum / quad_sqrt(kPi));
}

double kummer_direct(double a, double b, double z) {
  const quad zq = z;
  quad term = 1;
  quad sum = 1;
  for (int k = 0; k < 2000; ++k) {
    term *= (static_cast<quad>(a) + k) / (static_cast<quad>(b) + k) * zq / (k + 1);
    sum += term;
    if (term == 0 || (k > 2 * std::abs(z) && quad_abs(term) < 1e-34 * quad_abs(sum))) {
      break;
    }
  }
  return static_cast<double>(sum);
}

double alpha_half_reduction(double x, double nu) {
  const double bump = 2.0 * nu / std::sqrt(std::numbers::pi) * std::exp(-x * x);
  return x + bump / (1.0 + nu * erf_series(x));
}

double toeplitz_eigenvalue(double a, double b, int n, int k) {
  // Eigenvalues a + 2 b cos(j pi / (n + 1)), j = 1 .. n.
  const int j = b < 0 ? k : n + 1 - k;
  return a + 2.0 * b * std::cos(j * std::numbers::pi / (n + 1));
}

}  // namespace spectra::oracles
