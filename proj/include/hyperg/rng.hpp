#pragma once

#include <cstdint>
#include <span>

namespace hyperg {

/// Deterministic splitmix64 stream. Used instead of <random> engines so that
/// identical seeds give identical traces on every platform and compiler.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// 53-bit uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Independent child stream; mixing is stationary in (seed, stream).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    RngStream s(seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
    std::uint64_t v = s.next_u64();
    return v ^ stream;
  }

 private:
  std::uint64_t state_;
};

/// Samples an index from an (approximately normalized) probability vector.
/// Falls back to the last positive entry when rounding leaves u past the total.
int sample_index(std::span<const double> probs, RngStream& rng);

}  // namespace hyperg
