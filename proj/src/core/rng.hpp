#pragma once

#include <cstdint>
#include <random>

namespace spde {

// Counter-style stream derivation: a stream is identified by (seed, stream,
// substream) and two streams with different identifiers are statistically
// independent. Ensembles derive one stream per sample index, trajectories one
// per (trajectory, purpose), so parallel generation is reproducible
// independently of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                     std::uint64_t substream = 0)
      : engine_(mix(seed, stream, substream)) {}

  double normal() { return normal_(engine_); }
  double normal(double sigma) { return sigma * normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next_u64() { return engine_(); }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t substream) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (0x5555555555555555ULL + stream));
    h = splitmix64(h ^ (0xaaaaaaaaaaaaaaabULL + substream));
    return h;
  }

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace spde
