#ifndef SHSIG_PARAMS_HPP_
#define SHSIG_PARAMS_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "shsig/types.hpp"

namespace shsig {

enum class Strictness : std::uint8_t {
  kPaperStrict = 0,
  kRelaxed = 1,
};

inline constexpr std::uint32_t kDefaultTailCut = 13;

/// Public parameters shared by the SH and LSH schemes.
///
/// `width` is the preimage-sampling width V = k * sqrt(2 n log2 q) * log2 n and
/// `sim_width` the simulator width V / sqrt(k). Immutable once derived.
struct Params {
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  std::uint64_t k = 0;
  std::uint64_t h = 0;
  double width = 0.0;
  double sim_width = 0.0;
  std::uint32_t tail_cut = kDefaultTailCut;
  Strictness strictness = Strictness::kRelaxed;

  /// Verification bound V * sqrt(k n) on the max column norm.
  double norm_bound() const;
  /// SIS bound 2 V sqrt(k n) met by extracted solutions.
  double sis_bound() const;

  friend bool operator==(const Params&, const Params&) = default;
};

Params derive_params(std::uint64_t n, std::uint64_t k, std::uint64_t q,
                     Strictness strictness,
                     std::uint32_t tail_cut = kDefaultTailCut);

/// Desk-scale preset: n = 1536, k = 8, q = 257, relaxed.
Params toy_params();
/// Smallest-ish instance that satisfies q >= (kn)^2 with q prime.
Params paper_strict_params();
/// Looks up "toy" or "paper-strict"; throws InvalidArgument otherwise.
Params preset_params(std::string_view name);

bool is_prime(std::uint64_t value);

// Fixed-order record: "SGSP", u16 version, n q k h (u64 LE), V and s_sim
// (binary64 LE), tail_cut u32, strictness u8.
inline constexpr std::uint16_t kParamsVersion = 1;
inline constexpr std::size_t kParamsRecordSize = 4 + 2 + 4 * 8 + 2 * 8 + 4 + 1;

Bytes encode_params(const Params& params);
/// Decodes one record starting at `bytes[0]`; returns the parsed params and
/// leaves trailing bytes to the caller.
Params decode_params_prefix(std::span<const std::uint8_t> bytes);
Params decode_params(std::span<const std::uint8_t> bytes);

/// SHA-256 of the canonical record; binds keys, signatures and tags together.
std::array<std::uint8_t, 32> params_digest(const Params& params);

}  // namespace shsig

#endif  // SHSIG_PARAMS_HPP_
