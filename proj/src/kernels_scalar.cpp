#include "kernel_common.hpp"
#include "solc/kernels.hpp"

namespace solc::detail {

void emission_batch_scalar(int n_segments, const double* eta, const double* delta, double* out,
                           std::size_t count) noexcept {
  for (std::size_t i = 0; i < count; ++i) {
    const SegmentCoeffs k = segment_coeffs(eta[i], delta[i]);
    double er = 1.0, ei = 0.0, gr = 0.0, gi = 0.0;
    for (int m = 1; m <= n_segments; ++m) {
      const double sb = (m & 1) ? k.b : -k.b;
      const double ner = (k.c * er - k.a * ei) - sb * gi;
      const double nei = (k.c * ei + k.a * er) + sb * gr;
      const double ngr = (k.c * gr + k.a * gi) - sb * ei;
      const double ngi = (k.c * gi - k.a * gr) + sb * er;
      er = ner;
      ei = nei;
      gr = ngr;
      gi = ngi;
    }
    out[i] = gr * gr + gi * gi;
  }
}

}  // namespace solc::detail
