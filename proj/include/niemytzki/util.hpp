#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

namespace niemytzki {

// Shortest decimal string that round-trips to the same double. Keeps
// generated names and reports byte-stable across runs.
inline std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Parallelism cap: NIEMYTZKI_LAB_THREADS, clamped to [1, hardware].
inline unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("NIEMYTZKI_LAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned long>(v) < hw) return static_cast<unsigned>(v);
    if (v >= 1) return hw;
    return 1;
  }
  return hw;
}

// Deterministic 64-bit generator (splitmix64). The standard distributions
// are implementation-defined, so reports derived from a seed use this plus
// the explicit unit-interval mapping below.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace niemytzki
