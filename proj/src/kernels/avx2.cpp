#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "spectra/kernels.hpp"

namespace spectra::kernels::detail {

void sturm_counts_avx2(std::span<const double> diagonal, double off_sq,
                       double pivmin, std::span<const double> shifts,
                       std::span<int> counts) {
  const std::size_t n = diagonal.size();
  const std::size_t m = shifts.size();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d vpiv = _mm256_set1_pd(pivmin);
  const __m256d vneg_piv = _mm256_set1_pd(-pivmin);
  const __m256d voff = _mm256_set1_pd(off_sq);
  const __m256d zero = _mm256_setzero_pd();

  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) {
    const __m256d s = _mm256_loadu_pd(shifts.data() + j);
    __m256i c = _mm256_setzero_si256();

    __m256d t = _mm256_sub_pd(_mm256_set1_pd(diagonal[0]), s);
    __m256d small = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, t), vpiv, _CMP_LT_OQ);
    t = _mm256_blendv_pd(t, vneg_piv, small);
    c = _mm256_sub_epi64(c, _mm256_castpd_si256(_mm256_cmp_pd(t, zero, _CMP_LE_OQ)));

    for (std::size_t i = 1; i < n; ++i) {
      const __m256d d = _mm256_sub_pd(_mm256_set1_pd(diagonal[i]), s);
      t = _mm256_sub_pd(d, _mm256_div_pd(voff, t));
      small = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, t), vpiv, _CMP_LT_OQ);
      t = _mm256_blendv_pd(t, vneg_piv, small);
      c = _mm256_sub_epi64(c, _mm256_castpd_si256(_mm256_cmp_pd(t, zero, _CMP_LE_OQ)));
    }

    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), c);
    for (int k = 0; k < 4; ++k) counts[j + k] = static_cast<int>(lanes[k]);
  }
  if (j < m) {
    sturm_counts_scalar(diagonal, off_sq, pivmin, shifts.subspan(j),
                        counts.subspan(j));
  }
}

void tridiagonal_matvec_avx2(std::span<const double> diagonal, double off,
                             std::span<const double> x, std::span<double> y) {
  const std::size_t n = diagonal.size();
  if (n < 6) {
    tridiagonal_matvec_scalar(diagonal, off, x, y);
    return;
  }
  const double* d = diagonal.data();
  const double* xp = x.data();
  double* yp = y.data();
  const __m256d voff = _mm256_set1_pd(off);

  yp[0] = d[0] * xp[0] + off * xp[1];
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d dx = _mm256_mul_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(xp + i));
    const __m256d nb = _mm256_add_pd(_mm256_loadu_pd(xp + i - 1),
                                     _mm256_loadu_pd(xp + i + 1));
    _mm256_storeu_pd(yp + i, _mm256_add_pd(dx, _mm256_mul_pd(voff, nb)));
  }
  for (; i + 1 < n; ++i) {
    yp[i] = d[i] * xp[i] + off * (xp[i - 1] + xp[i + 1]);
  }
  yp[n - 1] = d[n - 1] * xp[n - 1] + off * xp[n - 2];
}

}  // namespace spectra::kernels::detail
