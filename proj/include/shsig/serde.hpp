#ifndef SHSIG_SERDE_HPP_
#define SHSIG_SERDE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "shsig/hashing.hpp"
#include "shsig/lsh_scheme.hpp"
#include "shsig/message.hpp"
#include "shsig/params.hpp"
#include "shsig/sh_scheme.hpp"

namespace shsig {

// Envelope: 4-byte magic, u16 version, 32-byte params digest, body.
// Decoders check magic, version, digest and trailing bytes in that order.
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kEnvelopeHeaderSize = 4 + 2 + 32;

enum class ObjectKind { kPublicKey, kSecretKey, kSignature, kMessage, kTag, kParams };

std::string_view object_magic(ObjectKind kind);
/// Kind of an encoded object from its magic; throws BadMagic or Truncated.
ObjectKind peek_kind(std::span<const std::uint8_t> bytes);

/// Digest stored in an envelope header, after checking magic and version.
Digest envelope_digest(std::span<const std::uint8_t> bytes, ObjectKind kind);

// Body: params record, hash id u8, A then alphas as u64 residues, column-major.
Bytes encode_public_key(const PublicKey& pk);
PublicKey decode_public_key(std::span<const std::uint8_t> bytes);

// Body: params record, then the n x n basis as i64, column-major.
Bytes encode_secret_key(const Params& params, const SecretKey& sk);
/// Basis only, no sampler.
IntMat decode_secret_basis(std::span<const std::uint8_t> bytes, const Params& params);
/// Rebuilds the sampler for pk; throws ParamsMismatch when the key belongs
/// to other parameters.
SecretKey decode_secret_key(std::span<const std::uint8_t> bytes, const PublicKey& pk);

Bytes encode_signature(const Params& params, const Signature& sigma);
Signature decode_signature(std::span<const std::uint8_t> bytes, const Params& params);

/// Messages are parameter-independent unless bound; an all-zero digest
/// matches any parameters.
Bytes encode_message(const Message& m, const Params* params = nullptr);
Message decode_message(std::span<const std::uint8_t> bytes, const Params* params = nullptr);

Bytes encode_tag(const Params& params, const Tag& tau);
Tag decode_tag(std::span<const std::uint8_t> bytes, const Params& params);

}  // namespace shsig

#endif  // SHSIG_SERDE_HPP_
