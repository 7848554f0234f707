#include "solc/kernels.hpp"

#include <string>

#include "solc/core.hpp"

namespace solc {

bool avx2_available() noexcept {
#if defined(SOLC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

KernelBackend resolve_backend(KernelBackend requested) {
  switch (requested) {
    case KernelBackend::kAuto:
      return avx2_available() ? KernelBackend::kAvx2 : KernelBackend::kScalar;
    case KernelBackend::kAvx2:
      if (!avx2_available()) throw Unsupported("AVX2 kernel requested but not available on this CPU/build");
      return KernelBackend::kAvx2;
    case KernelBackend::kScalar:
      break;
  }
  return KernelBackend::kScalar;
}

std::string_view backend_name(KernelBackend backend) noexcept {
  switch (backend) {
    case KernelBackend::kAuto: return "auto";
    case KernelBackend::kScalar: return "scalar";
    case KernelBackend::kAvx2: return "avx2";
  }
  return "unknown";
}

KernelBackend parse_backend(std::string_view name) {
  if (name == "auto") return KernelBackend::kAuto;
  if (name == "scalar") return KernelBackend::kScalar;
  if (name == "avx2") return KernelBackend::kAvx2;
  throw InvalidParameter("unknown kernel backend '" + std::string(name) + "'");
}

void emission_batch(int n_segments, std::span<const double> eta, std::span<const double> delta,
                    std::span<double> out, KernelBackend backend) {
  if (n_segments < 1) throw InvalidParameter("n_segments must be >= 1");
  if (eta.size() != delta.size() || eta.size() != out.size()) {
    throw InvalidParameter("emission_batch: span sizes differ");
  }
  switch (resolve_backend(backend)) {
#if defined(SOLC_HAVE_AVX2)
    case KernelBackend::kAvx2:
      detail::emission_batch_avx2(n_segments, eta.data(), delta.data(), out.data(), out.size());
      return;
#endif
    default:
      detail::emission_batch_scalar(n_segments, eta.data(), delta.data(), out.data(), out.size());
      return;
  }
}

}  // namespace solc
