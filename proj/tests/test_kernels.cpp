#include <doctest.h>

#include <cstring>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spectra/kernels.hpp"
#include "support.hpp"

using namespace spectra::kernels;
using testing_support::Gen;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels") {
  // diag 2, off -1, n = 3: eigenvalues 2 - sqrt 2, 2, 2 + sqrt 2.
  const std::vector<double> d(3, 2.0);
  const std::vector<double> shifts = {0.0, 0.6, 1.9, 2.1, 3.5};
  std::vector<int> counts(shifts.size());
  sturm_counts(d, 1.0, std::numeric_limits<double>::min(), shifts, counts, Isa::scalar);
  CHECK(counts == std::vector<int>{0, 1, 1, 2, 3});

  std::vector<double> y(3);
  const std::vector<double> x = {1.0, 2.0, 3.0};
  tridiagonal_matvec(d, -1.0, x, y, Isa::scalar);
  CHECK(y == std::vector<double>{0.0, 0.0, 4.0});
}

TEST_CASE("kernel argument checks") {
  const std::vector<double> d(3, 2.0);
  std::vector<int> counts(2);
  const std::vector<double> shifts(3, 0.0);
  CHECK_THROWS_AS(sturm_counts(d, 1.0, 1e-300, shifts, counts), std::invalid_argument);
  std::vector<double> y(2);
  CHECK_THROWS_AS(tridiagonal_matvec(d, 1.0, d, y), std::invalid_argument);
  if (!isa_available(Isa::avx2)) {
    CHECK_THROWS_AS(sturm_counts(d, 1.0, 1e-300, shifts, std::span<int>(counts.data(), 2), Isa::avx2),
                    std::invalid_argument);
  }
}

TEST_CASE("property: AVX2 Sturm counts equal the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 kernels unavailable on this machine; equivalence not exercised");
    return;
  }
  CHECK(detected_isa() == Isa::avx2);
  Gen gen(51);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(1, 300);
    const int m = gen.integer(1, 37);  // exercises the scalar tail
    std::vector<double> d(n);
    for (double& v : d) v = gen.uniform(-10.0, 10.0);
    const double off = gen.uniform(-5.0, 5.0);
    const double off_sq = off * off;
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, off_sq);
    std::vector<double> shifts(m);
    for (double& s : shifts) s = gen.uniform(-25.0, 25.0);
    // Exact pivot hits: shifts equal to a diagonal entry.
    if (trial % 5 == 0) shifts[0] = d[0];
    std::vector<int> a(m);
    std::vector<int> b(m);
    sturm_counts(d, off_sq, pivmin, shifts, a, Isa::scalar);
    sturm_counts(d, off_sq, pivmin, shifts, b, Isa::avx2);
    CHECK(a == b);
  }
}

TEST_CASE("property: AVX2 matvec is bit-identical to the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 kernels unavailable on this machine; equivalence not exercised");
    return;
  }
  Gen gen(52);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(1, 257);
    std::vector<double> d(n);
    std::vector<double> x(n);
    for (double& v : d) v = gen.uniform(-1e4, 1e4);
    for (double& v : x) v = gen.uniform(-1.0, 1.0);
    const double off = gen.uniform(-5e3, 5e3);
    std::vector<double> a(n);
    std::vector<double> b(n);
    tridiagonal_matvec(d, off, x, a, Isa::scalar);
    tridiagonal_matvec(d, off, x, b, Isa::avx2);
    CHECK(same_bits(a, b));
  }
}
