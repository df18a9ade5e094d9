#pragma once

// Independent reference values used by the acceptance suite and the tests.
// Nothing here calls into the library's special functions.

namespace spectra::oracles {

/// erf(x) from its Maclaurin series, summed in quad precision.
double erf_series(double x);

/// 1F1(a, b; z) by direct summation (alternating for z < 0) in quad
/// precision. Meant for |z| <= 30.
double kummer_direct(double a, double b, double z);

/// alpha(x) of the oscillator at eps = -1/2:
/// x + (2 nu / sqrt(pi)) exp(-x^2) / (1 + nu erf(x)).
double alpha_half_reduction(double x, double nu);

/// k-th smallest eigenvalue (k = 1 .. n) of the n x n tridiagonal Toeplitz
/// matrix with diagonal a and off-diagonal b.
double toeplitz_eigenvalue(double a, double b, int n, int k);

}  // namespace spectra::oracles
