#pragma once

#include <span>
#include <string_view>

namespace solc {

// Batched emission probability over many (eta, delta) points with a shared
// segment count. The kernels evolve the state in the frame co-rotating with
// the detuning, where every segment applies one of two fixed matrices
// (coupling +g0 or -g0). That frame differs from the interaction picture only
// by a diagonal phase, so |c_g|^2 is the same as the sequential product.
//
// The scalar kernel is the reference. The AVX2 kernel performs the same
// IEEE operations in the same order on four points at a time and is
// expected to agree bit for bit (the build disables FP contraction).

enum class KernelBackend { kAuto, kScalar, kAvx2 };

bool avx2_available() noexcept;

/// kAuto resolves to the widest available backend. Requesting kAvx2 on a
/// machine without it throws Unsupported.
KernelBackend resolve_backend(KernelBackend requested);

std::string_view backend_name(KernelBackend backend) noexcept;

/// Parses "auto", "scalar" or "avx2"; throws InvalidParameter otherwise.
KernelBackend parse_backend(std::string_view name);

/// out[i] = P_em(eta[i], delta[i], n_segments). Spans must have equal size.
void emission_batch(int n_segments, std::span<const double> eta, std::span<const double> delta,
                    std::span<double> out, KernelBackend backend = KernelBackend::kAuto);

namespace detail {
void emission_batch_scalar(int n_segments, const double* eta, const double* delta, double* out,
                           std::size_t count) noexcept;
#if defined(SOLC_HAVE_AVX2)
void emission_batch_avx2(int n_segments, const double* eta, const double* delta, double* out,
                         std::size_t count) noexcept;
#endif
}  // namespace detail

}  // namespace solc
