#include "shsig/params.hpp"

#include <cmath>
#include <string>

#include <openssl/sha.h>

#include "shsig/bytes.hpp"
#include "shsig/error.hpp"

namespace shsig {

namespace {

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod_u64(result, base, m);
    base = mul_mod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

constexpr std::array<char, 4> kParamsMagic = {'S', 'G', 'S', 'P'};

}  // namespace

// Deterministic Miller-Rabin; these witnesses cover all 64-bit inputs.
bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (value % p == 0) return value == p;
  }
  std::uint64_t d = value - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod_u64(a, d, value);
    if (x == 1 || x == value - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod_u64(x, x, value);
      if (x == value - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

double Params::norm_bound() const {
  return width * std::sqrt(static_cast<double>(k) * static_cast<double>(n));
}

double Params::sis_bound() const { return 2.0 * norm_bound(); }

Params derive_params(std::uint64_t n, std::uint64_t k, std::uint64_t q,
                     Strictness strictness, std::uint32_t tail_cut) {
  if (q < 3 || q % 2 == 0) {
    throw Error(ErrorCode::kInvalidModulus,
                "q must be odd and at least 3, got " + std::to_string(q));
  }
  if (n < 8) {
    throw Error(ErrorCode::kInvalidArgument, "n must be at least 8");
  }
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  }
  if (tail_cut < 1) {
    throw Error(ErrorCode::kInvalidArgument, "tail_cut must be positive");
  }
  if (!is_prime(q)) {
    if (strictness == Strictness::kPaperStrict) {
      throw Error(ErrorCode::kStrictViolation, "q must be prime, got " + std::to_string(q));
    }
    throw Error(ErrorCode::kInvalidModulus, "q must be prime, got " + std::to_string(q));
  }
  if (strictness == Strictness::kPaperStrict) {
    const unsigned __int128 kn = static_cast<unsigned __int128>(k) * n;
    if (static_cast<unsigned __int128>(q) < kn * kn) {
      throw Error(ErrorCode::kStrictViolation,
                  "q >= (kn)^2 violated: q = " + std::to_string(q) +
                      ", kn = " + std::to_string(static_cast<std::uint64_t>(kn)));
    }
  }

  const double log_q = std::log2(static_cast<double>(q));
  const double log_n = std::log2(static_cast<double>(n));
  Params p;
  p.n = n;
  p.q = q;
  p.k = k;
  p.h = static_cast<std::uint64_t>(std::floor(static_cast<double>(n) / (6.0 * log_q)));
  if (k > p.h) {
    throw Error(ErrorCode::kKExceedsH, "k = " + std::to_string(k) + " exceeds h = " +
                                           std::to_string(p.h) +
                                           " (alphas must be independent in Z_q^h)");
  }
  p.width = static_cast<double>(k) * std::sqrt(2.0 * static_cast<double>(n) * log_q) * log_n;
  p.sim_width = p.width / std::sqrt(static_cast<double>(k));
  p.tail_cut = tail_cut;
  p.strictness = strictness;
  return p;
}

Params toy_params() { return derive_params(1536, 8, 257, Strictness::kRelaxed); }

Params paper_strict_params() {
  return derive_params(256, 2, 262147, Strictness::kPaperStrict);
}

Params preset_params(std::string_view name) {
  if (name == "toy") return toy_params();
  if (name == "paper-strict") return paper_strict_params();
  throw Error(ErrorCode::kInvalidArgument, "unknown preset '" + std::string(name) + "'");
}

Bytes encode_params(const Params& p) {
  ByteWriter w;
  for (char c : kParamsMagic) w.put_u8(static_cast<std::uint8_t>(c));
  w.put_u16(kParamsVersion);
  w.put_u64(p.n);
  w.put_u64(p.q);
  w.put_u64(p.k);
  w.put_u64(p.h);
  w.put_f64(p.width);
  w.put_f64(p.sim_width);
  w.put_u32(p.tail_cut);
  w.put_u8(static_cast<std::uint8_t>(p.strictness));
  return std::move(w).take();
}

Params decode_params_prefix(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kParamsMagic.begin())) {
    throw Error(ErrorCode::kBadMagic, "expected SGSP params record");
  }
  if (const auto version = r.u16(); version != kParamsVersion) {
    throw Error(ErrorCode::kVersionUnsupported, "params version " + std::to_string(version));
  }
  Params p;
  p.n = r.u64();
  p.q = r.u64();
  p.k = r.u64();
  p.h = r.u64();
  p.width = r.f64();
  p.sim_width = r.f64();
  p.tail_cut = r.u32();
  const auto strict = r.u8();
  if (strict > 1) throw Error(ErrorCode::kMalformed, "strictness flag out of range");
  p.strictness = static_cast<Strictness>(strict);

  // A record must be exactly what derive_params would produce.
  Params expected;
  try {
    expected = derive_params(p.n, p.k, p.q, p.strictness, p.tail_cut);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformed, std::string("params record rejected: ") + e.what());
  }
  if (!(expected == p)) {
    throw Error(ErrorCode::kMalformed, "params record is not self-consistent");
  }
  return p;
}

Params decode_params(std::span<const std::uint8_t> bytes) {
  if (bytes.size() > kParamsRecordSize) {
    throw Error(ErrorCode::kMalformed, "trailing bytes after params record");
  }
  return decode_params_prefix(bytes);
}

std::array<std::uint8_t, 32> params_digest(const Params& params) {
  const Bytes record = encode_params(params);
  std::array<std::uint8_t, 32> digest{};
  SHA256(record.data(), record.size(), digest.data());
  return digest;
}

}  // namespace shsig
