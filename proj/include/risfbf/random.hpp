#pragma once

#include <cstdint>
#include <random>

namespace risfbf {

// Per-replication random stream. Copying a stream duplicates its future draws,
// which is how tests feed identical randomness to two solvers.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0, std::uint64_t stream = 0);

  double normal();
  double uniform(double lo, double hi);
  std::uint64_t next_u64();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace risfbf
