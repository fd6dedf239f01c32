#include "ragloop/bm25_kernel.hpp"

#include <cstdlib>

namespace ragloop::bm25kern {

namespace {

bool cpu_has_avx2() {
#if defined(RAGLOOP_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::vector<Kernel> probe_kernels() {
  std::vector<Kernel> kernels;
  kernels.push_back({"scalar", &accumulate_scalar});
#if defined(RAGLOOP_HAVE_AVX2_KERNEL)
  if (cpu_has_avx2()) {
    kernels.push_back({"avx2", &accumulate_avx2});
  }
#endif
  return kernels;
}

}  // namespace

const std::vector<Kernel>& available_kernels() {
  static const std::vector<Kernel> kernels = probe_kernels();
  return kernels;
}

const Kernel& selected_kernel() {
  static const Kernel choice = [] {
    const auto& kernels = available_kernels();
    if (const char* forced = std::getenv("RAGLOOP_BM25_KERNEL")) {
      for (const auto& k : kernels) {
        if (k.name == forced) {
          return k;
        }
      }
      return kernels.front();
    }
    return kernels.back();
  }();
  return choice;
}

}  // namespace ragloop::bm25kern
