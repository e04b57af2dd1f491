#include "shsig/lsh_scheme.hpp"

#include <string>

#include "shsig/error.hpp"
#include "shsig/trapdoor.hpp"

namespace shsig {

namespace {

void check_tag(const PublicKey& pk, const Tag& tau) {
  if (tau.size() != pk.params.n) {
    throw Error(ErrorCode::kLengthMismatch, "tag has " + std::to_string(tau.size()) +
                                                " bits, expected " + std::to_string(pk.params.n));
  }
}

}  // namespace

Tag random_tag(std::size_t n, RandomStream& rng) {
  Tag tau;
  tau.bits.resize(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng.next_u64();
    tau.bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1);
  }
  return tau;
}

KeyPair setup(const Params& params, RandomStream& rng) { return gen(params, rng); }

ZqMat tag_matrix_for(const PublicKey& pk, const Tag& tau) {
  check_tag(pk, tau);
  return delegate_matrix(pk.a, tag_matrix(tau.bits, pk.params.n), pk.params.q);
}

Signature lsh_sign(const SecretKey& sk, const PublicKey& pk, const Tag& tau, const Message& v,
                   RandomStream& rng, SignPolicy policy) {
  check_tag(pk, tau);
  if (policy == SignPolicy::kSingleSymbol && v.size() > 1) {
    throw Error(ErrorCode::kPolicyViolation,
                "private-key signing is limited to single symbols, got " +
                    std::to_string(v.size()));
  }
  if (v.empty()) return {};
  if (!sk.sampler) throw Error(ErrorCode::kInvalidBasis, "secret key has no sampler");
  const auto signs = tag_signs(tau.bits);
  Signature sigma;
  sigma.columns.resize(static_cast<Eigen::Index>(pk.params.n), static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    sigma.columns.col(static_cast<Eigen::Index>(i)) = sk.sampler->sample_pre_delegated(
        signs, symbol_syndrome(pk, v.symbols[i]), pk.params.width, rng);
  }
  return sigma;
}

Signature combine(const PublicKey& pk, const Tag& tau,
                  const std::vector<std::pair<std::uint64_t, Signature>>& pairs, std::uint64_t p) {
  check_tag(pk, tau);
  std::vector<std::uint64_t> coeffs;
  std::vector<Signature> sigs;
  coeffs.reserve(pairs.size());
  sigs.reserve(pairs.size());
  for (const auto& [c, s] : pairs) {
    coeffs.push_back(c);
    sigs.push_back(s);
  }
  return apply_functional(LinearFunctional(std::move(coeffs), p), sigs);
}

bool lsh_verify(const PublicKey& pk, const Tag& tau, const Message& y, const Signature& sigma) {
  if (tau.size() != pk.params.n) return false;
  for (auto b : tau.bits) {
    if (b > 1) return false;
  }
  if (sigma.empty() || sigma.columns.rows() != static_cast<Eigen::Index>(pk.params.n)) {
    return verify(pk, y, sigma);
  }
  if (!within_norm_bound(pk.params, sigma.columns)) return false;
  // B sigma = A H^T sigma and H is a sign diagonal, so verify H sigma under A.
  Signature flipped = sigma;
  for (Eigen::Index i = 0; i < flipped.columns.rows(); ++i) {
    if (!tau.bits[static_cast<std::size_t>(i)]) flipped.columns.row(i) *= -1;
  }
  return verify(pk, y, flipped);
}

void write_tag(ByteWriter& out, const Tag& tau) {
  out.put_u32(static_cast<std::uint32_t>(tau.size()));
  Bytes packed((tau.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau.bits[i] > 1) throw Error(ErrorCode::kInvalidArgument, "tag entries must be bits");
    packed[i / 8] |= static_cast<std::uint8_t>(tau.bits[i] << (i % 8));
  }
  out.put_bytes(packed);
}

Tag read_tag(ByteReader& in) {
  const std::uint32_t n = in.u32();
  const auto packed = in.take((static_cast<std::size_t>(n) + 7) / 8);
  Tag tau;
  tau.bits.resize(n);
  for (std::size_t i = 0; i < n; ++i) tau.bits[i] = (packed[i / 8] >> (i % 8)) & 1;
  if (n % 8 != 0 && (packed.back() >> (n % 8)) != 0) {
    throw Error(ErrorCode::kMalformed, "nonzero tag padding bits");
  }
  return tau;
}

}  // namespace shsig
