#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace roisim {

// One deterministic random stream per stochastic subsystem (mapper draws,
// channel draws, backoff draws, source jitter). Streams are derived from a
// base seed plus a label, so swapping e.g. the channel model never perturbs
// the mapper's draw sequence.
//
// mt19937_64 output is specified bit-exactly by the standard; the uniform
// mapping below avoids std::uniform_real_distribution, whose output is
// implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view stream_id)
      : stream_id_(stream_id), engine_(derive_seed(seed, stream_id)) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound] inclusive.
  std::uint64_t uniform_int(std::uint64_t bound) {
    const auto x = engine_();
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * (static_cast<unsigned __int128>(bound) + 1)) >> 64);
  }

  // True with probability p.
  bool bernoulli(double p) { return uniform01() < p; }

  const std::string& stream_id() const { return stream_id_; }

  static std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream_id) {
    // FNV-1a over the label, mixed with the base seed through splitmix64.
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : stream_id) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    return splitmix64(seed ^ h);
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::string stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace roisim
