#include "shsig/random.hpp"

#include <cstring>

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include "shsig/error.hpp"

namespace shsig {

struct RandomStream::CipherState {
  struct CtxFree {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
  };
  std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx;
};

RandomStream::RandomStream(std::span<const std::uint8_t> seed)
    : cipher_(std::make_unique<CipherState>()) {
  std::array<std::uint8_t, 32> key{};
  SHA256(seed.data(), seed.size(), key.data());
  // 32-bit block counter followed by a zero 96-bit nonce.
  std::array<std::uint8_t, 16> iv{};
  cipher_->ctx.reset(EVP_CIPHER_CTX_new());
  if (!cipher_->ctx ||
      EVP_EncryptInit_ex(cipher_->ctx.get(), EVP_chacha20(), nullptr, key.data(), iv.data()) != 1) {
    throw Error(ErrorCode::kInvariantViolation, "ChaCha20 initialisation failed");
  }
  refill();
}

RandomStream::RandomStream(std::uint64_t seed)
    : RandomStream([&] {
        std::array<std::uint8_t, 8> b{};
        for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(seed >> (8 * i));
        return b;
      }()) {}

RandomStream RandomStream::from_entropy() {
  std::array<std::uint8_t, 32> seed{};
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1) {
    throw Error(ErrorCode::kInvariantViolation, "RAND_bytes failed");
  }
  return RandomStream(std::span<const std::uint8_t>(seed));
}

RandomStream::RandomStream(RandomStream&&) noexcept = default;
RandomStream& RandomStream::operator=(RandomStream&&) noexcept = default;
RandomStream::~RandomStream() = default;

void RandomStream::refill() {
  static const std::array<std::uint8_t, 4096> zeros{};
  int produced = 0;
  if (EVP_EncryptUpdate(cipher_->ctx.get(), buffer_.data(), &produced, zeros.data(),
                        static_cast<int>(zeros.size())) != 1 ||
      produced != static_cast<int>(buffer_.size())) {
    throw Error(ErrorCode::kInvariantViolation, "ChaCha20 keystream failed");
  }
  pos_ = 0;
}

std::uint64_t RandomStream::next_u64() {
  if (pos_ + 8 > buffer_.size()) refill();
  std::uint64_t v;
  std::memcpy(&v, buffer_.data() + pos_, 8);
  pos_ += 8;
  return v;
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "uniform_below(0)");
  // Rejection on the top partial interval keeps the result unbiased.
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double RandomStream::uniform_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void RandomStream::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pos_ >= buffer_.size()) refill();
    b = buffer_[pos_++];
  }
}

RandomStream RandomStream::fork(std::string_view label) {
  Bytes material(32 + label.size());
  fill(std::span<std::uint8_t>(material.data(), 32));
  std::memcpy(material.data() + 32, label.data(), label.size());
  return RandomStream(std::span<const std::uint8_t>(material));
}

}  // namespace shsig
