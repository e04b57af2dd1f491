#ifndef SHSIG_HARNESS_HPP_
#define SHSIG_HARNESS_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shsig/error.hpp"
#include "shsig/lsh_scheme.hpp"
#include "shsig/sh_scheme.hpp"

namespace shsig {

// ---------------------------------------------------------------------------
// Simulated keys and signatures

/// Short vectors gamma_j with alpha_j = A gamma_j (mod q), one column each.
struct SimTrapdoor {
  IntMat gammas;  // n x k
};

inline constexpr int kGammaRetries = 1000;

/// Public key over a given A whose alphas are images of short gammas drawn
/// at width V / sqrt(k). Throws GenerationFailed.
std::pair<PublicKey, SimTrapdoor> sim_keygen(const Params& params, const ZqMat& a,
                                             RandomStream& rng);

/// sum_j h(x)_j gamma_j, one column per symbol.
IntVec sim_column(const PublicKey& pk, const SimTrapdoor& trap, std::span<const std::uint8_t> x);
Signature sim_sign(const PublicKey& pk, const SimTrapdoor& trap, const Message& x);
Signature lsh_sim_sign(const PublicKey& pk, const SimTrapdoor& trap, const Tag& tau,
                       const Message& v);

struct SisSolution {
  IntVec z;
  double norm = 0.0;
};

/// First nonzero z = (H_tau^T) sigma_i - sum_j h(y_i)_j gamma_j over the
/// columns of a forgery, or nullopt if every column reproduces the simulator.
/// Throws NotAForgery when the forgery does not verify.
std::optional<SisSolution> extract_sis(const PublicKey& pk, const SimTrapdoor& trap,
                                       const Message& y, const Signature& sigma,
                                       const std::optional<Tag>& tau = std::nullopt);

/// Half the l1 distance between the empirical distributions of x and y.
/// Throws EmptySamples.
template <typename Key>
double statistical_distance(const std::vector<Key>& x, const std::vector<Key>& y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::kEmptySamples, "empty sample set");
  std::map<Key, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& v : x) ++counts[v].first;
  for (const auto& v : y) ++counts[v].second;
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  double total = 0.0;
  for (const auto& [key, c] : counts) {
    total += std::abs(static_cast<double>(c.first) / nx - static_cast<double>(c.second) / ny);
  }
  return 0.5 * total;
}

// ---------------------------------------------------------------------------
// Unforgeability game

enum class SchemeKind { kSH, kLSH };
enum class SignerMode { kReal, kSimulated };

struct TaggedAnswer {
  Tag tag;
  std::vector<Signature> signatures;  // one per data-set symbol
};

/// Signing oracle handed to the adversary. Queries are single symbols (SH)
/// or data sets of single symbols (LSH).
class GameOracle {
 public:
  virtual ~GameOracle() = default;
  virtual Signature sign(const Symbol& x) = 0;
  virtual TaggedAnswer sign_dataset(const std::vector<Symbol>& items) = 0;
  virtual std::size_t queries_used() const = 0;
  virtual std::size_t query_budget() const = 0;
};

struct Forgery {
  std::optional<Tag> tag;  // required for LSH, absent for SH
  Message message;
  Signature signature;
};

struct AdversaryContext {
  SchemeKind scheme;
  const PublicKey& pk;
  GameOracle& oracle;
  RandomStream& rng;
  const SecretKey* leaked_key = nullptr;  // set only when the game leaks it
};

using Adversary = std::function<Forgery(AdversaryContext&)>;

struct GameConfig {
  SchemeKind scheme = SchemeKind::kSH;
  SignerMode mode = SignerMode::kReal;
  std::size_t query_budget = 16;
  // Answer a repeated symbol with its first signature. Simulated signing is
  // deterministic per symbol, so fresh answers would tell the modes apart.
  bool deduplicate = true;
  bool leak_trapdoor = false;
};

enum class ForgeryClass { kNone, kOutsideSpan, kTypeI, kTypeII };

std::string_view forgery_class_name(ForgeryClass c);

struct GameOutcome {
  bool verified = false;
  ForgeryClass forgery_class = ForgeryClass::kNone;
  bool win = false;
  bool extraction_attempted = false;
  std::optional<SisSolution> sis;
  std::size_t queries = 0;
  double total_seconds = 0.0;
  double adversary_seconds = 0.0;
  // Challenger-side cost: total minus adversary time.
  double overhead_seconds = 0.0;
  std::vector<std::string> transcript;  // line-delimited audit records
};

/// Keys come from `keys` when given; otherwise a fresh real key pair is
/// generated. In simulated mode A is taken from the key pair and the alphas
/// are re-derived by sim_keygen.
GameOutcome run_euf_cma_fmr(const GameConfig& config, const Adversary& adversary,
                            const Params& params, RandomStream& rng,
                            const KeyPair* keys = nullptr);

/// Key-value summary ("key=value" per line).
std::string summarize(const GameOutcome& outcome);

// Reference adversaries.
Adversary replay_adversary();
Adversary concat_adversary();
Adversary random_sigma_adversary();
Adversary trapdoor_leak_adversary();

// ---------------------------------------------------------------------------
// Weak context hiding

struct PrivacyReport {
  std::vector<double> distances;  // one per functional
  std::size_t samples = 0;
};

/// Pooled (column index, floor(first coordinate / (V / 2))) over the columns
/// of one combined signature.
std::vector<std::pair<std::int64_t, std::int64_t>> privacy_projection(const Params& params,
                                                                      const Signature& sigma);

/// For b in {0, 1} and each of `samples` rounds: fresh tag, sign the entries
/// of V_b that some functional uses, combine per functional, and project.
/// Throws FunctionalMismatch unless f(V_0) = f(V_1) for every f.
PrivacyReport run_privacy_experiment(const KeyPair& keys, const std::vector<Symbol>& v0,
                                     const std::vector<Symbol>& v1,
                                     const std::vector<LinearFunctional>& functionals,
                                     std::size_t samples, RandomStream& rng);
PrivacyReport run_privacy_experiment(const Params& params, const std::vector<Symbol>& v0,
                                     const std::vector<Symbol>& v1,
                                     const std::vector<LinearFunctional>& functionals,
                                     std::size_t samples, RandomStream& rng);

}  // namespace shsig

#endif  // SHSIG_HARNESS_HPP_
