#pragma once

#include <cstdint>
#include <random>

namespace bv {

// Deterministic random stream. Every stochastic operation in the library
// takes one of these explicitly; nothing reads global entropy.
//
// Streams are derived, never shared: derive(key) yields a child stream that
// depends only on this stream's seed and the key, not on how far this stream
// has advanced. Concurrent tasks therefore own disjoint streams regardless
// of scheduling, and results are reproducible at any parallelism level.
//
// All variates are produced from the raw engine output by fixed arithmetic
// (no implementation-defined std distributions), so a seed pins the exact
// draw sequence.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); safe to pass to log().
  double next_double_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Uniform on {0, ..., bound - 1}, unbiased via rejection. bound > 0.
  std::uint64_t next_below(std::uint64_t bound);

  // Standard normal draw (Marsaglia polar, spare discarded).
  double next_normal();

  // Gamma(shape, 1) draw. Marsaglia-Tsang squeeze for shape >= 1, with the
  // power-of-uniform boost for shape < 1, so all positive shapes are exact.
  double next_gamma(double shape);

  // Child stream derived from (seed, key); independent of this stream's
  // position, so derivation order never matters.
  RngStream derive(std::uint64_t key) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace bv
