#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops of the eigensolver. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant selected at
// runtime. The variants perform the same IEEE operations in the same order,
// so their results are bit-identical.

namespace spectra::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

// Best variant supported by this CPU and build.
Isa detected_isa();
bool isa_available(Isa isa);

// counts[j] = number of eigenvalues of the symmetric tridiagonal matrix
// (diagonal, constant off-diagonal with square off_sq) that are <= shifts[j],
// by Sturm sequence counting. Pivots smaller than pivmin are replaced by
// -pivmin.
void sturm_counts(std::span<const double> diagonal, double off_sq,
                  double pivmin, std::span<const double> shifts,
                  std::span<int> counts, Isa isa);
void sturm_counts(std::span<const double> diagonal, double off_sq,
                  double pivmin, std::span<const double> shifts,
                  std::span<int> counts);

// y = T x for the tridiagonal T(diagonal, constant off-diagonal).
void tridiagonal_matvec(std::span<const double> diagonal, double off,
                        std::span<const double> x, std::span<double> y,
                        Isa isa);
void tridiagonal_matvec(std::span<const double> diagonal, double off,
                        std::span<const double> x, std::span<double> y);

namespace detail {
void sturm_counts_scalar(std::span<const double> diagonal, double off_sq,
                         double pivmin, std::span<const double> shifts,
                         std::span<int> counts);
void sturm_counts_avx2(std::span<const double> diagonal, double off_sq,
                       double pivmin, std::span<const double> shifts,
                       std::span<int> counts);
void tridiagonal_matvec_scalar(std::span<const double> diagonal, double off,
                               std::span<const double> x, std::span<double> y);
void tridiagonal_matvec_avx2(std::span<const double> diagonal, double off,
                             std::span<const double> x, std::span<double> y);
}  // namespace detail

}  // namespace spectra::kernels
