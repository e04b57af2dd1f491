#include "shsig/message.hpp"

#include <string>

#include "shsig/error.hpp"
#include "shsig/hashing.hpp"
#include "shsig/zq_linalg.hpp"

namespace shsig {

namespace {

void check_coefficient(std::uint64_t c, std::uint64_t p) {
  if (c >= p) {
    throw Error(ErrorCode::kCoefficientOutOfRange,
                "coefficient " + std::to_string(c) + " is not below " + std::to_string(p));
  }
}

}  // namespace

Symbol symbol_from_string(std::string_view text) { return Symbol(text.begin(), text.end()); }

BitVector hash_symbol(std::span<const std::uint8_t> x, std::uint64_t k, HashId id) {
  if (id != HashId::kShake256) {
    throw Error(ErrorCode::kUnknownHashId,
                "hash id " + std::to_string(static_cast<unsigned>(id)));
  }
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  ByteWriter w;
  w.put_u8(0x01);
  w.put_u64(x.size());
  w.put_bytes(x);
  const Bytes digest = shake256(w.bytes(), static_cast<std::size_t>((k + 7) / 8));
  BitVector bits(k);
  for (std::uint64_t j = 0; j < k; ++j) bits[j] = (digest[j / 8] >> (j % 8)) & 1;
  return bits;
}

ZqVec syndrome(const BitVector& v, const ZqMat& alphas, std::uint64_t q) {
  if (static_cast<Eigen::Index>(v.size()) != alphas.cols()) {
    throw Error(ErrorCode::kLengthMismatch, "bit vector has " + std::to_string(v.size()) +
                                                " entries for " + std::to_string(alphas.cols()) +
                                                " alphas");
  }
  ZqVec beta = ZqVec::Zero(alphas.rows());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v[j]) continue;
    for (Eigen::Index i = 0; i < beta.size(); ++i) {
      beta(i) = (beta(i) + alphas(i, static_cast<Eigen::Index>(j)) % q) % q;
    }
  }
  return beta;
}

Message concat(const Message& a, const Message& b) {
  Message out = a;
  out.symbols.insert(out.symbols.end(), b.symbols.begin(), b.symbols.end());
  return out;
}

Signature concat(const Signature& a, const Signature& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.columns.rows() != b.columns.rows()) {
    throw Error(ErrorCode::kLengthMismatch, "signature vectors have different lengths");
  }
  Signature out;
  out.columns.resize(a.columns.rows(), a.size() + b.size());
  out.columns << a.columns, b.columns;
  return out;
}

Message scalar_mul(std::uint64_t c, const Message& x, std::uint64_t p) {
  check_coefficient(c, p);
  Message out;
  out.symbols.reserve(x.size() * c);
  for (std::uint64_t i = 0; i < c; ++i) {
    out.symbols.insert(out.symbols.end(), x.symbols.begin(), x.symbols.end());
  }
  return out;
}

Signature scalar_mul(std::uint64_t c, const Signature& s, std::uint64_t p) {
  check_coefficient(c, p);
  if (c == 0 || s.empty()) return {};
  Signature out;
  out.columns.resize(s.columns.rows(), s.size() * static_cast<Eigen::Index>(c));
  for (std::uint64_t i = 0; i < c; ++i) {
    out.columns.middleCols(static_cast<Eigen::Index>(i) * s.size(), s.size()) = s.columns;
  }
  return out;
}

LinearFunctional::LinearFunctional(std::vector<std::uint64_t> coeffs, std::uint64_t bound)
    : coefficients(std::move(coeffs)), p(bound) {
  if (p == 0) throw Error(ErrorCode::kInvalidArgument, "coefficient bound must be positive");
  for (auto c : coefficients) check_coefficient(c, p);
}

namespace {

template <typename T>
T apply_any(const LinearFunctional& f, std::span<const T> items) {
  if (f.coefficients.size() != items.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(f.coefficients.size()) + " coefficients for " +
                    std::to_string(items.size()) + " items");
  }
  T out{};
  for (std::size_t i = 0; i < items.size(); ++i) {
    out = concat(out, scalar_mul(f.coefficients[i], items[i], f.p));
  }
  return out;
}

}  // namespace

Message apply_functional(const LinearFunctional& f, std::span<const Message> items) {
  return apply_any(f, items);
}

Signature apply_functional(const LinearFunctional& f, std::span<const Signature> items) {
  return apply_any(f, items);
}

bool span_contains(const std::set<Symbol>& queried, const Message& candidate) {
  for (const auto& s : candidate.symbols) {
    if (!queried.contains(s)) return false;
  }
  return true;
}

void write_message(ByteWriter& out, const Message& m) {
  out.put_u32(static_cast<std::uint32_t>(m.size()));
  for (const auto& s : m.symbols) {
    out.put_u32(static_cast<std::uint32_t>(s.size()));
    out.put_bytes(s);
  }
}

Message read_message(ByteReader& in) {
  const std::uint32_t count = in.u32();
  // Every symbol costs at least its 4-byte length prefix.
  if (count > in.remaining() / 4) {
    throw Error(ErrorCode::kTruncated, "message claims " + std::to_string(count) + " symbols");
  }
  Message m;
  m.symbols.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t len = in.u32();
    const auto bytes = in.take(len);
    m.symbols.emplace_back(bytes.begin(), bytes.end());
  }
  return m;
}

void write_signature(ByteWriter& out, const Signature& s) {
  out.put_u32(static_cast<std::uint32_t>(s.size()));
  out.put_u32(static_cast<std::uint32_t>(s.empty() ? 0 : s.columns.rows()));
  for (Eigen::Index j = 0; j < s.size(); ++j)
    for (Eigen::Index i = 0; i < s.columns.rows(); ++i) out.put_i64(s.columns(i, j));
}

Signature read_signature(ByteReader& in) {
  const std::uint32_t count = in.u32();
  const std::uint32_t n = in.u32();
  if (count == 0) {
    if (n != 0) throw Error(ErrorCode::kMalformed, "empty signature with nonzero length");
    return {};
  }
  if (n == 0) throw Error(ErrorCode::kMalformed, "signature vectors of length 0");
  const auto entries = static_cast<std::uint64_t>(count) * n;
  if (entries > in.remaining() / 8) {
    throw Error(ErrorCode::kTruncated, "signature body shorter than " +
                                           std::to_string(count) + " x " + std::to_string(n));
  }
  Signature s;
  s.columns.resize(n, count);
  for (Eigen::Index j = 0; j < s.columns.cols(); ++j)
    for (Eigen::Index i = 0; i < s.columns.rows(); ++i) s.columns(i, j) = in.i64();
  return s;
}

}  // namespace shsig
