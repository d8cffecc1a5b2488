#include "llag/rng.hpp"

#include <cmath>

#include "llag/errors.hpp"

namespace llag {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : key_(master_seed), stream_id_(stream_id) {}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(key_),
                                            static_cast<std::uint32_t>(key_ >> 32)};
  const auto out = philox4x32_10(counter, key);
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
  ++block_;
}

std::uint64_t RngStream::next_u64() {
  if (buffered_ == 0) refill();
  return buffer_[2 - buffered_--];
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream(master_seed, stream_id);
}

std::uint64_t sub_seed(std::uint64_t master_seed, std::uint64_t label) {
  return mix64(master_seed ^ mix64(label + 0x632BE59BD9B4E019ULL));
}

double sample_uniform(RngStream& rng) {
  return static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
}

double sample_uniform_open(RngStream& rng) {
  return (static_cast<double>(rng.next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

// Marsaglia polar method: uses only log and sqrt, keeping draws reproducible
// across standard libraries (unlike std::normal_distribution).
double sample_std_normal(RngStream& rng) {
  if (rng.has_spare_normal) {
    rng.has_spare_normal = false;
    return rng.spare_normal;
  }
  double u, v, s;
  do {
    u = 2.0 * sample_uniform(rng) - 1.0;
    v = 2.0 * sample_uniform(rng) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  rng.spare_normal = v * factor;
  rng.has_spare_normal = true;
  return u * factor;
}

double sample_exponential(RngStream& rng) { return -std::log(sample_uniform_open(rng)); }

std::int64_t sample_geometric(RngStream& rng, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("sample_geometric: p must lie in (0, 1]");
  if (p == 1.0) return 1;
  const double v = sample_uniform_open(rng);
  return 1 + static_cast<std::int64_t>(std::floor(std::log(v) / std::log1p(-p)));
}

}  // namespace llag
