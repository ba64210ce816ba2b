#pragma once

#include <cstdint>

namespace ecsim {

// Uniform [0,1) source consumed by every sampling operation. Implementations
// must be deterministic for a given construction so that runs replay exactly.
struct RandomSource {
  virtual ~RandomSource() = default;
  virtual double next_double() = 0;
};

// Counter-based generator: output k is a bit mix of (key, k), where the key
// folds in a seed and a stream id. Substreams are independent of call order
// elsewhere and cheap to create per trial, which keeps parallel ensembles
// reproducible regardless of scheduling.
class CounterRng final : public RandomSource {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ull))) {}

  std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

  // 53-bit mantissa in [0,1)
  double next_double() override {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ecsim
