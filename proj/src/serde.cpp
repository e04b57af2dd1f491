#include "shsig/serde.hpp"

#include <algorithm>
#include <string>

#include "shsig/error.hpp"

namespace shsig {

namespace {

constexpr Digest kWildcardDigest{};

void write_header(ByteWriter& w, ObjectKind kind, const Digest& digest) {
  for (char c : object_magic(kind)) w.put_u8(static_cast<std::uint8_t>(c));
  w.put_u16(kFormatVersion);
  w.put_bytes(digest);
}

// Consumes the header; returns the stored digest.
Digest read_header(ByteReader& r, ObjectKind kind) {
  const auto magic = r.take(4);
  const auto want = object_magic(kind);
  if (!std::equal(magic.begin(), magic.end(), want.begin())) {
    throw Error(ErrorCode::kBadMagic, "expected " + std::string(want) + " object");
  }
  if (const auto version = r.u16(); version != kFormatVersion) {
    throw Error(ErrorCode::kVersionUnsupported, std::string(want) + " version " +
                                                    std::to_string(version));
  }
  Digest d{};
  const auto raw = r.take(d.size());
  std::copy(raw.begin(), raw.end(), d.begin());
  return d;
}

void require_digest(const Digest& got, const Params& params) {
  if (got != params_digest(params)) {
    throw Error(ErrorCode::kParamsMismatch, "object was made for other parameters");
  }
}

Params read_params(ByteReader& r) {
  const auto raw = r.take(kParamsRecordSize);
  return decode_params(raw);
}

std::uint64_t read_residue(ByteReader& r, std::uint64_t q) {
  const std::uint64_t v = r.u64();
  if (v >= q) throw Error(ErrorCode::kMalformed, "residue out of range");
  return v;
}

void need_entries(const ByteReader& r, std::uint64_t rows, std::uint64_t cols) {
  const unsigned __int128 bytes = static_cast<unsigned __int128>(rows) * cols * 8;
  if (bytes > r.remaining()) {
    throw Error(ErrorCode::kTruncated, "body shorter than a " + std::to_string(rows) + " x " +
                                           std::to_string(cols) + " matrix");
  }
}

}  // namespace

std::string_view object_magic(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::kPublicKey: return "SGPK";
    case ObjectKind::kSecretKey: return "SGSK";
    case ObjectKind::kSignature: return "SGSG";
    case ObjectKind::kMessage: return "SGMS";
    case ObjectKind::kTag: return "SGTG";
    case ObjectKind::kParams: return "SGSP";
  }
  return "????";
}

ObjectKind peek_kind(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.take(4);
  const std::string_view m(reinterpret_cast<const char*>(magic.data()), magic.size());
  for (auto kind : {ObjectKind::kPublicKey, ObjectKind::kSecretKey, ObjectKind::kSignature,
                    ObjectKind::kMessage, ObjectKind::kTag, ObjectKind::kParams}) {
    if (object_magic(kind) == m) return kind;
  }
  throw Error(ErrorCode::kBadMagic, "unrecognized object magic");
}

Digest envelope_digest(std::span<const std::uint8_t> bytes, ObjectKind kind) {
  ByteReader r(bytes);
  return read_header(r, kind);
}

Bytes encode_public_key(const PublicKey& pk) {
  ByteWriter w;
  write_header(w, ObjectKind::kPublicKey, params_digest(pk.params));
  w.put_bytes(encode_params(pk.params));
  w.put_u8(static_cast<std::uint8_t>(pk.hash_id));
  for (Eigen::Index j = 0; j < pk.a.cols(); ++j)
    for (Eigen::Index i = 0; i < pk.a.rows(); ++i) w.put_u64(pk.a(i, j));
  for (Eigen::Index j = 0; j < pk.alphas.cols(); ++j)
    for (Eigen::Index i = 0; i < pk.alphas.rows(); ++i) w.put_u64(pk.alphas(i, j));
  return std::move(w).take();
}

PublicKey decode_public_key(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const Digest digest = read_header(r, ObjectKind::kPublicKey);
  PublicKey pk;
  pk.params = read_params(r);
  require_digest(digest, pk.params);
  const auto hash = r.u8();
  if (hash != static_cast<std::uint8_t>(HashId::kShake256)) {
    throw Error(ErrorCode::kUnknownHashId, "hash id " + std::to_string(hash));
  }
  pk.hash_id = static_cast<HashId>(hash);
  const auto& p = pk.params;
  need_entries(r, p.h, p.n + p.k);
  pk.a.resize(static_cast<Eigen::Index>(p.h), static_cast<Eigen::Index>(p.n));
  for (Eigen::Index j = 0; j < pk.a.cols(); ++j)
    for (Eigen::Index i = 0; i < pk.a.rows(); ++i) pk.a(i, j) = read_residue(r, p.q);
  pk.alphas.resize(static_cast<Eigen::Index>(p.h), static_cast<Eigen::Index>(p.k));
  for (Eigen::Index j = 0; j < pk.alphas.cols(); ++j)
    for (Eigen::Index i = 0; i < pk.alphas.rows(); ++i) pk.alphas(i, j) = read_residue(r, p.q);
  r.expect_end();
  return pk;
}

Bytes encode_secret_key(const Params& params, const SecretKey& sk) {
  ByteWriter w;
  write_header(w, ObjectKind::kSecretKey, params_digest(params));
  w.put_bytes(encode_params(params));
  for (Eigen::Index j = 0; j < sk.basis.cols(); ++j)
    for (Eigen::Index i = 0; i < sk.basis.rows(); ++i) w.put_i64(sk.basis(i, j));
  return std::move(w).take();
}

IntMat decode_secret_basis(std::span<const std::uint8_t> bytes, const Params& params) {
  ByteReader r(bytes);
  const Digest digest = read_header(r, ObjectKind::kSecretKey);
  require_digest(digest, params);
  if (!(read_params(r) == params)) {
    throw Error(ErrorCode::kMalformed, "embedded params disagree with the header digest");
  }
  need_entries(r, params.n, params.n);
  const auto n = static_cast<Eigen::Index>(params.n);
  IntMat basis(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) basis(i, j) = r.i64();
  r.expect_end();
  return basis;
}

SecretKey decode_secret_key(std::span<const std::uint8_t> bytes, const PublicKey& pk) {
  return make_secret_key(pk, decode_secret_basis(bytes, pk.params));
}

Bytes encode_signature(const Params& params, const Signature& sigma) {
  ByteWriter w;
  write_header(w, ObjectKind::kSignature, params_digest(params));
  write_signature(w, sigma);
  return std::move(w).take();
}

Signature decode_signature(std::span<const std::uint8_t> bytes, const Params& params) {
  ByteReader r(bytes);
  require_digest(read_header(r, ObjectKind::kSignature), params);
  Signature s = read_signature(r);
  r.expect_end();
  if (!s.empty() && s.columns.rows() != static_cast<Eigen::Index>(params.n)) {
    throw Error(ErrorCode::kMalformed, "signature vectors do not have length n");
  }
  return s;
}

Bytes encode_message(const Message& m, const Params* params) {
  ByteWriter w;
  write_header(w, ObjectKind::kMessage, params ? params_digest(*params) : kWildcardDigest);
  write_message(w, m);
  return std::move(w).take();
}

Message decode_message(std::span<const std::uint8_t> bytes, const Params* params) {
  ByteReader r(bytes);
  const Digest digest = read_header(r, ObjectKind::kMessage);
  if (params && digest != kWildcardDigest) require_digest(digest, *params);
  Message m = read_message(r);
  r.expect_end();
  return m;
}

Bytes encode_tag(const Params& params, const Tag& tau) {
  ByteWriter w;
  write_header(w, ObjectKind::kTag, params_digest(params));
  write_tag(w, tau);
  return std::move(w).take();
}

Tag decode_tag(std::span<const std::uint8_t> bytes, const Params& params) {
  ByteReader r(bytes);
  require_digest(read_header(r, ObjectKind::kTag), params);
  Tag tau = read_tag(r);
  r.expect_end();
  if (tau.size() != params.n) throw Error(ErrorCode::kMalformed, "tag length differs from n");
  return tau;
}

}  // namespace shsig
