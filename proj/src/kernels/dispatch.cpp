#include <stdexcept>
#include <string>

#include "spectra/kernels.hpp"

namespace spectra::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SPECTRA_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  static const Isa isa = isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  return isa;
}

namespace {

void require(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument(
        std::string("kernel variant not available: ") +
                    std::string(to_string(isa)));
  }
}

}  // namespace

void sturm_counts(std::span<const double> diagonal, double off_sq,
                  double pivmin, std::span<const double> shifts,
                  std::span<int> counts, Isa isa) {
  require(isa);
  if (diagonal.empty() || shifts.size() != counts.size()) {
    throw std::invalid_argument("sturm_counts: bad extents");
  }
#if defined(SPECTRA_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) {
    detail::sturm_counts_avx2(diagonal, off_sq, pivmin, shifts, counts);
    return;
  }
#endif
  detail::sturm_counts_scalar(diagonal, off_sq, pivmin, shifts, counts);
}

void sturm_counts(std::span<const double> diagonal, double off_sq,
                  double pivmin, std::span<const double> shifts,
                  std::span<int> counts) {
  sturm_counts(diagonal, off_sq, pivmin, shifts, counts, detected_isa());
}

void tridiagonal_matvec(std::span<const double> diagonal, double off,
                        std::span<const double> x, std::span<double> y,
                        Isa isa) {
  require(isa);
  if (x.size() != diagonal.size() || y.size() != diagonal.size()) {
    throw std::invalid_argument("tridiagonal_matvec: bad extents");
  }
#if defined(SPECTRA_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) {
    detail::tridiagonal_matvec_avx2(diagonal, off, x, y);
    return;
  }
#endif
  detail::tridiagonal_matvec_scalar(diagonal, off, x, y);
}

void tridiagonal_matvec(std::span<const double> diagonal, double off,
                        std::span<const double> x, std::span<double> y) {
  tridiagonal_matvec(diagonal, off, x, y, detected_isa());
}

}  // namespace spectra::kernels
