#ifndef ORDSEV_RNG_HPP
#define ORDSEV_RNG_HPP

#include <cstdint>

namespace ordsev {

// SplitMix64 finalizer (Steele, Lea & Flood, 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64 sequence keyed by (seed, record). Each record owns an
/// independent stream, so any partition of records across workers
/// reproduces the same draws.
class RecordStream {
 public:
  constexpr RecordStream(std::uint64_t seed, std::uint64_t record)
      : state_(splitmix64_mix(seed ^ splitmix64_mix(record + 0x9e3779b97f4a7c15ULL))) {}

  constexpr std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform on the open interval (0, 1): 53-bit grid shifted by half a step.
  constexpr double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ordsev

#endif  // ORDSEV_RNG_HPP
