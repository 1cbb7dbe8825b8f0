#pragma once
// Counter-derived random substreams. One master seed; every episode gets its
// own stream keyed by (master, quantity tag, state, episode index), so batches
// are reproducible bit for bit no matter how the episodes are scheduled.

#include <cstdint>
#include <string_view>

namespace wag {

// splitmix64: tiny, fast, passes BigCrush as a 64-bit mixer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform on [0,1): 53 random mantissa bits, never returns 1.0
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state;
};

// murmur3 finalizer; bijective on 64-bit words.
inline std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xFF51AFD7ED558CCDULL;
  k ^= k >> 33;
  k *= 0xC4CEB9FE1A85EC53ULL;
  k ^= k >> 33;
  return k;
}

// Key for one estimand: master seed combined with a tag string and two small
// integers (camp, sensitivity level). FNV-1a over the tag, then mixed.
inline std::uint64_t stream_key(std::uint64_t master, std::string_view tag,
                                std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch : tag) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return fmix64(h ^ fmix64(master) ^ (a * 0x9E3779B97F4A7C15ULL) ^
                fmix64(b + 0xDA942042E4DD58B5ULL));
}

// Stream for one episode. Distinct indices land at pseudo-random positions of
// the splitmix orbit; overlap within realistic episode counts is negligible.
inline SplitMix64 substream(std::uint64_t key, std::uint64_t index) {
  return SplitMix64(fmix64(key ^ fmix64(index * 0x9E3779B97F4A7C15ULL + 1)));
}

}  // namespace wag
