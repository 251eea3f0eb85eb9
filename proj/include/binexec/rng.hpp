#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace binexec {

// Counter-based generator (SplitMix64 over a keyed counter). Substreams are
// addressed by mixing stream ids into the key, so draws depend only on
// (seed, stream ids, position) and parallel consumers stay schedule-independent.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ kSalt)) {}

  CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream)
      : CounterRng(seed) {
    for (std::uint64_t s : stream) absorb(s);
  }

  void absorb(std::uint64_t s) { key_ = mix(key_ ^ mix(s + kGolden)); }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  // uniform in (0,1)
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kSalt = 0x8C7F0AAC97C4AA2Full;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace binexec
