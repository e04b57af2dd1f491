#ifndef SHSIG_MESSAGE_HPP_
#define SHSIG_MESSAGE_HPP_

#include <cstdint>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "shsig/bytes.hpp"
#include "shsig/types.hpp"

namespace shsig {

/// One element of Z_+ = {0,1}*, as raw bytes. The empty byte string is a
/// valid symbol; it is not the empty message.
using Symbol = Bytes;

Symbol symbol_from_string(std::string_view text);

/// Ordered symbol sequence; the empty sequence is the identity for concat.
struct Message {
  std::vector<Symbol> symbols;

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  static Message single(Symbol s) { return Message{{std::move(s)}}; }

  friend bool operator==(const Message&, const Message&) = default;
};

/// n x |sigma| matrix, one column per message symbol. The empty signature
/// has no columns (and no rows); it is the identity for concat.
struct Signature {
  IntMat columns;

  Eigen::Index size() const { return columns.cols(); }
  bool empty() const { return columns.cols() == 0; }

  friend bool operator==(const Signature& a, const Signature& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return a.columns.rows() == b.columns.rows() && a.columns.cols() == b.columns.cols() &&
           a.columns == b.columns;
  }
};

enum class HashId : std::uint8_t {
  kShake256 = 1,
};

/// First k bits of SHAKE256(0x01 || u64 length || x). Bit j is bit (j mod 8)
/// of byte j / 8. Throws UnknownHashId.
BitVector hash_symbol(std::span<const std::uint8_t> x, std::uint64_t k,
                      HashId id = HashId::kShake256);

/// beta = sum_j v_j alpha_j (mod q), where alpha_j is column j of `alphas`.
ZqVec syndrome(const BitVector& v, const ZqMat& alphas, std::uint64_t q);

Message concat(const Message& a, const Message& b);
Signature concat(const Signature& a, const Signature& b);

inline constexpr std::uint64_t kDefaultCoefficientBound = 16;

/// c-fold self-concatenation; 0 gives the empty value. Throws
/// CoefficientOutOfRange unless c < p.
Message scalar_mul(std::uint64_t c, const Message& x,
                   std::uint64_t p = kDefaultCoefficientBound);
Signature scalar_mul(std::uint64_t c, const Signature& s,
                     std::uint64_t p = kDefaultCoefficientBound);

/// f(v_1, ..., v_l) = c_1 v_1 || ... || c_l v_l with every c_i in Z_p.
struct LinearFunctional {
  std::vector<std::uint64_t> coefficients;
  std::uint64_t p = kDefaultCoefficientBound;

  LinearFunctional() = default;
  /// Throws CoefficientOutOfRange.
  LinearFunctional(std::vector<std::uint64_t> coeffs, std::uint64_t bound = kDefaultCoefficientBound);
};

Message apply_functional(const LinearFunctional& f, std::span<const Message> items);
Signature apply_functional(const LinearFunctional& f, std::span<const Signature> items);

/// Whether `candidate` is a finite concatenation of queried symbols. The
/// empty message is the empty concatenation and always belongs.
bool span_contains(const std::set<Symbol>& queried, const Message& candidate);

// Wire bodies. Message: u32 count, then u32 length + bytes per symbol.
// Signature: u32 count, u32 n, then count * n i64 entries, column-major.
void write_message(ByteWriter& out, const Message& m);
Message read_message(ByteReader& in);
void write_signature(ByteWriter& out, const Signature& s);
Signature read_signature(ByteReader& in);

}  // namespace shsig

#endif  // SHSIG_MESSAGE_HPP_
