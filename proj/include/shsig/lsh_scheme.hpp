#ifndef SHSIG_LSH_SCHEME_HPP_
#define SHSIG_LSH_SCHEME_HPP_

#include <utility>
#include <vector>

#include "shsig/message.hpp"
#include "shsig/sh_scheme.hpp"

namespace shsig {

/// Data-set tag tau in {0,1}^n. Signing under tau uses B = A H^T with
/// H = diag(2 tau_i - 1).
struct Tag {
  BitVector bits;

  std::size_t size() const { return bits.size(); }
  friend bool operator==(const Tag&, const Tag&) = default;
  friend auto operator<=>(const Tag&, const Tag&) = default;
};

Tag random_tag(std::size_t n, RandomStream& rng);

/// Same key generation as the SH scheme.
KeyPair setup(const Params& params, RandomStream& rng);

/// B^tau = A H_tau^T (mod q).
ZqMat tag_matrix_for(const PublicKey& pk, const Tag& tau);

/// Columns sigma_i with B^tau sigma_i = beta_i (mod q), sampled with the
/// delegated basis H_tau T_A. Throws LengthMismatch and PolicyViolation.
Signature lsh_sign(const SecretKey& sk, const PublicKey& pk, const Tag& tau, const Message& v,
                   RandomStream& rng, SignPolicy policy = SignPolicy::kAnyMessage);

/// c_1 sigma_1 || ... || c_l sigma_l. No re-randomization.
Signature combine(const PublicKey& pk, const Tag& tau,
                  const std::vector<std::pair<std::uint64_t, Signature>>& pairs,
                  std::uint64_t p = kDefaultCoefficientBound);

bool lsh_verify(const PublicKey& pk, const Tag& tau, const Message& y, const Signature& sigma);

// Bits packed little-endian within each byte, zero-padded: u32 bit count
// then ceil(n / 8) bytes.
void write_tag(ByteWriter& out, const Tag& tau);
Tag read_tag(ByteReader& in);

}  // namespace shsig

#endif  // SHSIG_LSH_SCHEME_HPP_
