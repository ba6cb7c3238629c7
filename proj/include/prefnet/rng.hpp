#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace prefnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed from a parent seed and a fixed stream tag.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
  return splitmix64(parent ^ splitmix64(tag));
}

// Folds a sequence of values into one seed. The result depends only on the
// folded values and their order, never on when or where the folding runs.
class SeedChain {
 public:
  explicit SeedChain(std::uint64_t base) : h_(splitmix64(base)) {}

  SeedChain& fold(std::uint64_t v) {
    h_ = splitmix64(h_ ^ (v + 0x9e3779b97f4a7c15ULL + (h_ << 6) + (h_ >> 2)));
    return *this;
  }

  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_;
};

// Uniform draws layered over std::mt19937_64. The engine's output sequence
// is fully specified by the standard; the <random> distributions are not,
// so the distribution logic lives here and seeded streams are identical on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, bound), bound >= 1; unbiased via rejection.
  std::uint64_t uniform_int(std::uint64_t bound) {
    assert(bound >= 1);
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  // Fisher-Yates with a fixed draw order.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace prefnet
