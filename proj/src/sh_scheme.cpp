#include "shsig/sh_scheme.hpp"

#include <cmath>
#include <string>

#include "shsig/error.hpp"
#include "shsig/trapdoor.hpp"
#include "shsig/zq_linalg.hpp"

namespace shsig {

namespace {

constexpr long double kNormSlack = 1e-9L;

bool key_shape_ok(const PublicKey& pk) {
  const auto& p = pk.params;
  return pk.a.rows() == static_cast<Eigen::Index>(p.h) &&
         pk.a.cols() == static_cast<Eigen::Index>(p.n) &&
         pk.alphas.rows() == static_cast<Eigen::Index>(p.h) &&
         pk.alphas.cols() == static_cast<Eigen::Index>(p.k);
}

}  // namespace

SecretKey make_secret_key(const PublicKey& pk, IntMat basis) {
  if (!key_shape_ok(pk)) throw Error(ErrorCode::kLengthMismatch, "public key shape");
  if (basis.rows() != pk.a.cols() || basis.cols() != pk.a.cols()) {
    throw Error(ErrorCode::kLengthMismatch, "basis must be n x n");
  }
  if (!mul_mod(pk.a, basis, pk.params.q).isZero()) {
    throw Error(ErrorCode::kInvalidBasis, "A T_A != 0 (mod q)");
  }
  SecretKey sk;
  sk.sampler = std::make_shared<const PreimageSampler>(pk.a, basis, pk.params.q,
                                                       pk.params.tail_cut);
  sk.basis = std::move(basis);
  return sk;
}

ZqMat sample_alphas(const Params& params, RandomStream& rng, int* rounds) {
  const auto h = static_cast<Eigen::Index>(params.h);
  const auto k = static_cast<Eigen::Index>(params.k);
  ZqMat alphas(h, k);
  for (int round = 1; round <= kAlphaRetries; ++round) {
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index i = 0; i < h; ++i) alphas(i, j) = rng.uniform_below(params.q);
    if (rank_mod_q(alphas, params.q) == static_cast<std::size_t>(k)) {
      if (rounds) *rounds = round;
      return alphas;
    }
  }
  throw Error(ErrorCode::kGenerationFailed,
              "alphas stayed dependent after " + std::to_string(kAlphaRetries) + " draws");
}

KeyPair gen(const Params& params, RandomStream& rng) {
  TrapdoorPair trap = trap_gen(params, rng);
  KeyPair kp;
  kp.pk.params = params;
  kp.pk.a = std::move(trap.a);
  kp.pk.alphas = sample_alphas(params, rng, &kp.alpha_rounds);
  kp.pk.hash_id = HashId::kShake256;
  kp.sk = make_secret_key(kp.pk, std::move(trap.basis));
  return kp;
}

ZqVec symbol_syndrome(const PublicKey& pk, std::span<const std::uint8_t> symbol) {
  return syndrome(hash_symbol(symbol, pk.params.k, pk.hash_id), pk.alphas, pk.params.q);
}

Signature sign(const SecretKey& sk, const PublicKey& pk, const Message& x, RandomStream& rng,
               SignPolicy policy) {
  if (policy == SignPolicy::kSingleSymbol && x.size() > 1) {
    throw Error(ErrorCode::kPolicyViolation,
                "private-key signing is limited to single symbols, got " +
                    std::to_string(x.size()));
  }
  if (x.empty()) return {};
  if (!sk.sampler) throw Error(ErrorCode::kInvalidBasis, "secret key has no sampler");
  Signature sigma;
  sigma.columns.resize(static_cast<Eigen::Index>(pk.params.n), static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    sigma.columns.col(static_cast<Eigen::Index>(i)) =
        sk.sampler->sample_pre(symbol_syndrome(pk, x.symbols[i]), pk.params.width, rng);
  }
  return sigma;
}

bool within_norm_bound(const Params& params, const IntMat& columns) {
  const long double bound = static_cast<long double>(params.norm_bound()) * (1.0L + kNormSlack);
  const long double limit = bound * bound;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    long double sq = 0.0L;
    for (Eigen::Index i = 0; i < columns.rows(); ++i) {
      const auto v = static_cast<long double>(columns(i, j));
      sq += v * v;
      if (sq > limit) return false;
    }
  }
  return true;
}

bool verify(const PublicKey& pk, const Message& x, const Signature& sigma) {
  if (static_cast<std::size_t>(sigma.size()) != x.size()) return false;
  if (x.empty()) return true;
  if (!key_shape_ok(pk) || sigma.columns.rows() != pk.a.cols()) return false;
  if (!within_norm_bound(pk.params, sigma.columns)) return false;
  try {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const ZqVec got = mul_mod(pk.a, IntVec(sigma.columns.col(static_cast<Eigen::Index>(i))),
                                pk.params.q);
      if (got != symbol_syndrome(pk, x.symbols[i])) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

Signature hom_concat(const Signature& sx, const Signature& sy) { return concat(sx, sy); }

}  // namespace shsig
