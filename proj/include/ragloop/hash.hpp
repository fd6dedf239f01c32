#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace ragloop {

// Incremental 64-bit FNV-1a. Used for store checksums, index fingerprints
// and seed derivation; stable across platforms.
class Fnv1a64 {
 public:
  void update(std::string_view data) {
    for (unsigned char c : data) {
      state_ ^= c;
      state_ *= kPrime;
    }
  }

  void update_byte(unsigned char c) {
    state_ ^= c;
    state_ *= kPrime;
  }

  void update_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      update_byte(static_cast<unsigned char>(v >> (8 * i)));
    }
  }

  void update_double(double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    update_u64(bits);
  }

  std::uint64_t digest() const { return state_; }

  static std::uint64_t hash(std::string_view data) {
    Fnv1a64 h;
    h.update(data);
    return h.digest();
  }

 private:
  static constexpr std::uint64_t kOffset = 1469598103934665603ULL;
  static constexpr std::uint64_t kPrime = 1099511628211ULL;
  std::uint64_t state_ = kOffset;
};

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

// Stable seed derivation for per-attempt rollout seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view key, std::uint64_t n) {
  Fnv1a64 h;
  h.update_u64(base);
  h.update(key);
  h.update_u64(n);
  return h.digest();
}

}  // namespace ragloop
