#ifndef SHSIG_RANDOM_HPP_
#define SHSIG_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>

#include "shsig/types.hpp"

namespace shsig {

/// Deterministic, seedable random stream (ChaCha20 keystream keyed by
/// SHA-256 of the seed). Every sampling routine takes one explicitly; there
/// is no global generator. Satisfies UniformRandomBitGenerator.
///
/// Not thread-safe: a single stream must not be shared across threads.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::span<const std::uint8_t> seed);
  explicit RandomStream(std::uint64_t seed);
  /// Seeded from the operating system.
  static RandomStream from_entropy();

  RandomStream(RandomStream&&) noexcept;
  RandomStream& operator=(RandomStream&&) noexcept;
  RandomStream(const RandomStream&) = delete;
  RandomStream& operator=(const RandomStream&) = delete;
  ~RandomStream();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  /// Uniform in [0, bound); unbiased. `bound` must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform_unit();
  void fill(std::span<std::uint8_t> out);

  /// Independent child stream derived from this one's output and a label.
  RandomStream fork(std::string_view label);

 private:
  void refill();

  struct CipherState;
  std::unique_ptr<CipherState> cipher_;
  std::array<std::uint8_t, 4096> buffer_{};
  std::size_t pos_ = 0;
};

}  // namespace shsig

#endif  // SHSIG_RANDOM_HPP_
