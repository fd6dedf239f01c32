// AVX2 variant of the posting accumulation kernel. The vector lanes compute
// tf / (tf + norm) * weight for four postings at once; the read-modify-write
// into the score array stays scalar because AVX2 has no scatter. Lane
// arithmetic mirrors the scalar kernel operation for operation (mul + add,
// never FMA) so results stay bit-identical to it.

#include "ragloop/bm25_kernel.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace ragloop::bm25kern {

void accumulate_avx2(const std::uint32_t* ordinals, const std::uint32_t* tfs, std::size_t count,
                     double weight, const double* norms, double* scores) {
  const __m256d w = _mm256_set1_pd(weight);
  std::size_t i = 0;
  alignas(32) double contrib[4];
  for (; i + 4 <= count; i += 4) {
    const __m128i ord = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ordinals + i));
    const __m128i tf_i32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tfs + i));
    const __m256d tf = _mm256_cvtepi32_pd(tf_i32);
    const __m256d norm = _mm256_i32gather_pd(norms, ord, 8);
    const __m256d denom = _mm256_add_pd(tf, norm);
    const __m256d saturation = _mm256_div_pd(tf, denom);
    const __m256d c = _mm256_mul_pd(w, saturation);
    _mm256_store_pd(contrib, c);
    scores[ordinals[i + 0]] += contrib[0];
    scores[ordinals[i + 1]] += contrib[1];
    scores[ordinals[i + 2]] += contrib[2];
    scores[ordinals[i + 3]] += contrib[3];
  }
  if (i < count) {
    accumulate_scalar(ordinals + i, tfs + i, count - i, weight, norms, scores);
  }
}

}  // namespace ragloop::bm25kern

#endif  // x86_64
