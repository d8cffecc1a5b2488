#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace llag {

/// Counter-based random stream built on Philox4x32-10.
///
/// The 64-bit master seed is the Philox key; the 128-bit counter is split into
/// (block index, stream id). Two streams with different ids therefore walk
/// disjoint regions of counter space and can never overlap. The sequence
/// depends only on integer arithmetic, so it is identical on every platform.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  /// Next raw 64-bit word.
  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  std::uint64_t master_seed() const { return key_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Cached second normal variate from the polar method; exposed so that
  /// sample_std_normal can live outside the class.
  bool has_spare_normal = false;
  double spare_normal = 0.0;

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  void refill();

  std::uint64_t key_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// Raw Philox4x32-10 block function (exposed for known-answer tests).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// SplitMix64-style avalanche, used to fold identifiers into seeds.
std::uint64_t mix64(std::uint64_t x);

/// Reproducible stream for replicate `stream_id` of an experiment.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

/// Folds a sub-experiment label into a master seed, so that e.g. each
/// dimension of a sweep gets its own family of replicate streams.
std::uint64_t sub_seed(std::uint64_t master_seed, std::uint64_t label);

double sample_uniform(RngStream& rng);            // [0, 1)
double sample_uniform_open(RngStream& rng);       // (0, 1)
double sample_std_normal(RngStream& rng);
double sample_exponential(RngStream& rng);        // rate 1
/// Geometric on {1, 2, ...}: P(G = k) = p (1 - p)^(k - 1). Throws on p outside (0, 1].
std::int64_t sample_geometric(RngStream& rng, double p);

}  // namespace llag
