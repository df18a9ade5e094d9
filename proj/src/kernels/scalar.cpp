#include <cmath>
#include <cstddef>

#include "spectra/kernels.hpp"

namespace spectra::kernels::detail {

void sturm_counts_scalar(std::span<const double> diagonal, double off_sq,
                         double pivmin, std::span<const double> shifts,
                         std::span<int> counts) {
  const std::size_t n = diagonal.size();
  for (std::size_t j = 0; j < shifts.size(); ++j) {
    const double s = shifts[j];
    int c = 0;
    double t = diagonal[0] - s;
    if (std::abs(t) < pivmin) t = -pivmin;
    c += t <= 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      t = (diagonal[i] - s) - off_sq / t;
      if (std::abs(t) < pivmin) t = -pivmin;
      c += t <= 0.0;
    }
    counts[j] = c;
  }
}

void tridiagonal_matvec_scalar(std::span<const double> diagonal, double off,
                               std::span<const double> x, std::span<double> y) {
  const std::size_t n = diagonal.size();
  if (n == 0) return;
  if (n == 1) {
    y[0] = diagonal[0] * x[0];
    return;
  }
  y[0] = diagonal[0] * x[0] + off * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    y[i] = diagonal[i] * x[i] + off * (x[i - 1] + x[i + 1]);
  }
  y[n - 1] = diagonal[n - 1] * x[n - 1] + off * x[n - 2];
}

}  // namespace spectra::kernels::detail
