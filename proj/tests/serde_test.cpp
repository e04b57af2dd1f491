#include "shsig/serde.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace shsig {
namespace {

using testing::tiny_keys;
using testing::tiny_params;

TEST(SerdeTest, PublicKeyRoundTrip) {
  const Bytes b = encode_public_key(tiny_keys().pk);
  EXPECT_EQ(peek_kind(b), ObjectKind::kPublicKey);
  EXPECT_EQ(b.size(), kEnvelopeHeaderSize + kParamsRecordSize + 1 + 8 * 3 * (96 + 3));
  EXPECT_EQ(envelope_digest(b, ObjectKind::kPublicKey), params_digest(tiny_params()));
  EXPECT_EQ(decode_public_key(b), tiny_keys().pk);
}

TEST(SerdeTest, SecretKeyRoundTrip) {
  const KeyPair& kp = tiny_keys();
  const Bytes b = encode_secret_key(kp.pk.params, kp.sk);
  EXPECT_EQ(decode_secret_basis(b, kp.pk.params), kp.sk.basis);
  const SecretKey sk = decode_secret_key(b, kp.pk);
  RandomStream a(90), c(90);
  const Message x = Message::single(symbol_from_string("after-reload"));
  EXPECT_EQ(sign(sk, kp.pk, x, a), sign(kp.sk, kp.pk, x, c));
}

TEST(SerdeTest, SignatureMessageTagRoundTrip) {
  const KeyPair& kp = tiny_keys();
  const Params& p = kp.pk.params;
  RandomStream rng(91);
  Message x;
  x.symbols = {symbol_from_string("a"), Symbol{}, Symbol{0xff, 0x00}};
  const Signature s = sign(kp.sk, kp.pk, x, rng);
  EXPECT_EQ(decode_signature(encode_signature(p, s), p), s);
  EXPECT_EQ(decode_signature(encode_signature(p, Signature{}), p), Signature{});
  EXPECT_EQ(decode_message(encode_message(x)), x);
  EXPECT_EQ(decode_message(encode_message(x, &p), &p), x);
  EXPECT_EQ(decode_message(encode_message(x), &p), x);  // unbound matches anything
  const Tag tau = random_tag(p.n, rng);
  EXPECT_EQ(decode_tag(encode_tag(p, tau), p), tau);
}

TEST(SerdeTest, ToyAndPaperStrictRoundTrip) {
  for (const Params& p : {toy_params(), paper_strict_params()}) {
    RandomStream rng(92);
    const KeyPair kp = gen(p, rng);
    const PublicKey pk = decode_public_key(encode_public_key(kp.pk));
    EXPECT_EQ(pk, kp.pk);
    const SecretKey sk = decode_secret_key(encode_secret_key(p, kp.sk), pk);
    const Message x = Message::single(symbol_from_string("preset"));
    const Signature s = decode_signature(encode_signature(p, sign(sk, pk, x, rng)), p);
    EXPECT_TRUE(verify(pk, x, s));
  }
}

TEST(SerdeTest, ParamsMismatchIsDetected) {
  const KeyPair& kp = tiny_keys();
  RandomStream rng(93);
  const Message x = Message::single(symbol_from_string("m"));
  const Bytes sig = encode_signature(kp.pk.params, sign(kp.sk, kp.pk, x, rng));
  EXPECT_SHSIG_ERROR(decode_signature(sig, toy_params()), kParamsMismatch);
  const Params toy = toy_params();
  const Bytes bound = encode_message(x, &toy);
  const Params tiny = tiny_params();
  EXPECT_SHSIG_ERROR(decode_message(bound, &tiny), kParamsMismatch);
  EXPECT_SHSIG_ERROR(decode_tag(encode_tag(tiny, random_tag(96, rng)), toy), kParamsMismatch);
  EXPECT_SHSIG_ERROR(decode_secret_basis(encode_secret_key(tiny, kp.sk), toy), kParamsMismatch);
  // A header digest that disagrees with the embedded params record.
  Bytes pk = encode_public_key(kp.pk);
  pk[10] ^= 1;
  EXPECT_SHSIG_ERROR(decode_public_key(pk), kParamsMismatch);
}

TEST(SerdeTest, EnvelopeErrors) {
  const Bytes good = encode_public_key(tiny_keys().pk);
  Bytes bad = good;
  bad[0] = 'Z';
  EXPECT_SHSIG_ERROR(decode_public_key(bad), kBadMagic);
  EXPECT_SHSIG_ERROR(peek_kind(bad), kBadMagic);
  EXPECT_SHSIG_ERROR(peek_kind(Bytes{'S', 'G'}), kTruncated);
  EXPECT_SHSIG_ERROR(decode_signature(good, tiny_params()), kBadMagic);
  bad = good;
  bad[4] = 9;
  EXPECT_SHSIG_ERROR(decode_public_key(bad), kVersionUnsupported);
  EXPECT_SHSIG_ERROR(decode_public_key(std::span(good).first(good.size() - 3)), kTruncated);
  bad = good;
  bad.push_back(0);
  EXPECT_SHSIG_ERROR(decode_public_key(bad), kMalformed);
}

TEST(SerdeTest, BodyErrors) {
  const Bytes good = encode_public_key(tiny_keys().pk);
  const std::size_t hash_at = kEnvelopeHeaderSize + kParamsRecordSize;
  Bytes bad = good;
  bad[hash_at] = 7;
  EXPECT_SHSIG_ERROR(decode_public_key(bad), kUnknownHashId);
  // First residue of A set to q.
  bad = good;
  bad[hash_at + 1] = 17;
  for (int i = 1; i < 8; ++i) bad[hash_at + 1 + i] = 0;
  EXPECT_SHSIG_ERROR(decode_public_key(bad), kMalformed);

  const Params p = tiny_params();
  IntMat wrong(5, 1);
  wrong.setZero();
  EXPECT_SHSIG_ERROR(decode_signature(encode_signature(p, Signature{wrong}), p), kMalformed);
  EXPECT_SHSIG_ERROR(decode_tag(encode_tag(p, Tag{BitVector(8, 1)}), p), kMalformed);
}

// At q = 257 a one-byte change moves an entry by d * 256^j = +-d (mod q)
// with 0 < |d| < 257, so it can never keep the syndrome.
TEST(SerdeTest, SignatureByteFlipsNeverVerify) {
  const KeyPair& kp = testing::toy_keys();
  const Params& p = kp.pk.params;
  RandomStream rng(94);
  const Message x = Message::single(symbol_from_string("fuzz"));
  const Bytes good = encode_signature(p, sign(kp.sk, kp.pk, x, rng));
  int decoded = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Bytes bad = good;
    const auto i = rng.uniform_below(bad.size());
    bad[i] ^= static_cast<std::uint8_t>(1 + rng.uniform_below(255));
    try {
      const Signature s = decode_signature(bad, p);
      ++decoded;
      EXPECT_FALSE(verify(kp.pk, x, s)) << "byte " << i;
    } catch (const Error&) {
    }
  }
  EXPECT_GT(decoded, 900);
}

// With q = 17 and 256 = 1 (mod 17), adding 17 to a low byte adds a
// multiple of q: the syndrome survives and the short vector still verifies.
TEST(SerdeTest, SmallModulusSignaturesAreMalleable) {
  const KeyPair& kp = tiny_keys();
  const Params& p = kp.pk.params;
  RandomStream rng(96);
  const Message x = Message::single(symbol_from_string("malleable"));
  Bytes b = encode_signature(p, sign(kp.sk, kp.pk, x, rng));
  const std::size_t first_entry = kEnvelopeHeaderSize + 8;
  ASSERT_LT(b[first_entry], 256 - 17);
  b[first_entry] += 17;
  const Signature s = decode_signature(b, p);
  EXPECT_TRUE(verify(kp.pk, x, s));
}

TEST(SerdeTest, PublicKeyByteFlipsAreHandled) {
  const KeyPair& kp = tiny_keys();
  RandomStream rng(95);
  const Message x = Message::single(symbol_from_string("fuzz-pk"));
  const Signature s = sign(kp.sk, kp.pk, x, rng);
  const Bytes good = encode_public_key(kp.pk);
  for (int trial = 0; trial < 300; ++trial) {
    Bytes bad = good;
    const auto i = rng.uniform_below(bad.size());
    bad[i] ^= static_cast<std::uint8_t>(1 + rng.uniform_below(255));
    try {
      const PublicKey pk = decode_public_key(bad);
      if (pk == kp.pk) continue;
      // A changed key may still accept by coincidence only if the altered
      // entry multiplies a zero; it must not throw.
      (void)verify(pk, x, s);
    } catch (const Error&) {
    }
  }
}

}  // namespace
}  // namespace shsig
