#include <immintrin.h>

#include "kernel_common.hpp"
#include "solc/kernels.hpp"

#if !defined(__AVX2__)
#error "kernels_avx2.cpp must be compiled with -mavx2"
#endif

namespace solc::detail {

void emission_batch_avx2(int n_segments, const double* eta, const double* delta, double* out,
                         std::size_t count) noexcept {
  std::size_t i = 0;
  alignas(32) double c[4], a[4], b[4];
  for (; i + 4 <= count; i += 4) {
    for (int lane = 0; lane < 4; ++lane) {
      const SegmentCoeffs k = segment_coeffs(eta[i + lane], delta[i + lane]);
      c[lane] = k.c;
      a[lane] = k.a;
      b[lane] = k.b;
    }
    const __m256d vc = _mm256_load_pd(c);
    const __m256d va = _mm256_load_pd(a);
    const __m256d vb_pos = _mm256_load_pd(b);
    const __m256d vb_neg = _mm256_sub_pd(_mm256_setzero_pd(), vb_pos);

    __m256d er = _mm256_set1_pd(1.0);
    __m256d ei = _mm256_setzero_pd();
    __m256d gr = _mm256_setzero_pd();
    __m256d gi = _mm256_setzero_pd();
    for (int m = 1; m <= n_segments; ++m) {
      const __m256d sb = (m & 1) ? vb_pos : vb_neg;
      const __m256d ner = _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(vc, er), _mm256_mul_pd(va, ei)), _mm256_mul_pd(sb, gi));
      const __m256d nei = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(vc, ei), _mm256_mul_pd(va, er)), _mm256_mul_pd(sb, gr));
      const __m256d ngr = _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(vc, gr), _mm256_mul_pd(va, gi)), _mm256_mul_pd(sb, ei));
      const __m256d ngi = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(vc, gi), _mm256_mul_pd(va, gr)), _mm256_mul_pd(sb, er));
      er = ner;
      ei = nei;
      gr = ngr;
      gi = ngi;
    }
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(gr, gr), _mm256_mul_pd(gi, gi)));
  }
  if (i < count) emission_batch_scalar(n_segments, eta + i, delta + i, out + i, count - i);
}

}  // namespace solc::detail
