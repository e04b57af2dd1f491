#ifndef SHSIG_SH_SCHEME_HPP_
#define SHSIG_SH_SCHEME_HPP_

#include <memory>

#include "shsig/gauss_sampler.hpp"
#include "shsig/message.hpp"
#include "shsig/params.hpp"
#include "shsig/random.hpp"
#include "shsig/types.hpp"

namespace shsig {

struct PublicKey {
  Params params;
  ZqMat a;       // h x n
  ZqMat alphas;  // h x k, column j is alpha_j
  HashId hash_id = HashId::kShake256;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

/// The basis T_A plus its precomputed preimage sampler. Copies share the
/// sampler, which is read-only after construction.
struct SecretKey {
  IntMat basis;
  std::shared_ptr<const PreimageSampler> sampler;
};

/// Builds the sampler for `basis`; checks A T_A = 0 (mod q).
SecretKey make_secret_key(const PublicKey& pk, IntMat basis);

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
  int alpha_rounds = 0;  // draws of (alpha_1..alpha_k) until independent
};

inline constexpr int kAlphaRetries = 64;

/// k uniform vectors of Z_q^h, redrawn until linearly independent.
ZqMat sample_alphas(const Params& params, RandomStream& rng, int* rounds = nullptr);

KeyPair gen(const Params& params, RandomStream& rng);

enum class SignPolicy {
  kAnyMessage,
  kSingleSymbol,  // private-key signing restricted to one symbol
};

/// The value beta the signature column of `symbol` must map to.
ZqVec symbol_syndrome(const PublicKey& pk, std::span<const std::uint8_t> symbol);

/// One preimage of width V per symbol. The empty message gets the empty
/// signature without sampling. Throws PolicyViolation.
Signature sign(const SecretKey& sk, const PublicKey& pk, const Message& x, RandomStream& rng,
               SignPolicy policy = SignPolicy::kAnyMessage);

/// Max column norm of sigma within V sqrt(k n) (relative slack 1e-9).
bool within_norm_bound(const Params& params, const IntMat& columns);

bool verify(const PublicKey& pk, const Message& x, const Signature& sigma);

/// Signature on x || y from signatures on x and y.
Signature hom_concat(const Signature& sx, const Signature& sy);

}  // namespace shsig

#endif  // SHSIG_SH_SCHEME_HPP_
