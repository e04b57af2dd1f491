#ifndef SHSIG_HASHING_HPP_
#define SHSIG_HASHING_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "shsig/types.hpp"

namespace shsig {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
Bytes shake256(std::span<const std::uint8_t> data, std::size_t out_len);

std::string to_hex(std::span<const std::uint8_t> data);
/// Throws InvalidArgument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

}  // namespace shsig

#endif  // SHSIG_HASHING_HPP_
