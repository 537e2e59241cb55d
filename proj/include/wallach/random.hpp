#pragma once

#include <cstdint>
#include <limits>

#include "wallach/decomposition.hpp"

namespace wallach {

/// Counter-based SplitMix64: output n is mix(seed + n * golden), so any
/// stream position is reproducible across platforms.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0);

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal by Box-Muller (both variates used).
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Random vector in module i with independent standard normal coordinates,
/// normalized to unit length in the -B norm.
Element random_module_vector(const ReductiveDecomposition& dec, int i, SplitMix64& rng);
/// Random vector of m (normal coordinates on the m-basis), unit -B norm.
Element random_m_vector(const ReductiveDecomposition& dec, SplitMix64& rng);
/// Random vector of the whole algebra, unit Frobenius norm of coordinates.
Element random_element(const ContextPtr& ctx, SplitMix64& rng);

}  // namespace wallach
