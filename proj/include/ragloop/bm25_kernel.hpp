#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ragloop::bm25kern {

// Adds weight * tf / (tf + norms[ordinal]) to scores[ordinal] for every
// posting of one query term. `weight` folds query term count, idf and the
// (k1 + 1) numerator factor. Every variant performs the identical
// per-element operation sequence (convert, add, divide, multiply,
// accumulate), so results are bit-identical across variants; the
// equivalence tests assert exactly that. Kernel translation units are built
// with -ffp-contract=off to keep the scalar path free of FMA contraction.
using AccumulateFn = void (*)(const std::uint32_t* ordinals, const std::uint32_t* tfs,
                              std::size_t count, double weight, const double* norms,
                              double* scores);

void accumulate_scalar(const std::uint32_t* ordinals, const std::uint32_t* tfs, std::size_t count,
                       double weight, const double* norms, double* scores);

#if defined(__x86_64__) || defined(_M_X64)
void accumulate_avx2(const std::uint32_t* ordinals, const std::uint32_t* tfs, std::size_t count,
                     double weight, const double* norms, double* scores);
#endif

struct Kernel {
  std::string name;
  AccumulateFn fn;
};

// Scalar first, then whatever SIMD variants are compiled in and supported by
// this CPU.
const std::vector<Kernel>& available_kernels();

// Fastest available kernel, unless RAGLOOP_BM25_KERNEL names one explicitly
// ("scalar" or "avx2"; unknown or unavailable names fall back to scalar).
const Kernel& selected_kernel();

}  // namespace ragloop::bm25kern
