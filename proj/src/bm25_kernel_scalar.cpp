#include "ragloop/bm25_kernel.hpp"

namespace ragloop::bm25kern {

void accumulate_scalar(const std::uint32_t* ordinals, const std::uint32_t* tfs, std::size_t count,
                       double weight, const double* norms, double* scores) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t ord = ordinals[i];
    const double tf = static_cast<double>(tfs[i]);
    const double denom = tf + norms[ord];
    const double saturation = tf / denom;
    const double contribution = weight * saturation;
    scores[ord] += contribution;
  }
}

}  // namespace ragloop::bm25kern
