#include "shsig/harness.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "shsig/gauss_sampler.hpp"
#include "shsig/hashing.hpp"
#include "shsig/trapdoor.hpp"
#include "shsig/zq_linalg.hpp"

namespace shsig {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double column_norm(const IntVec& v) {
  long double sq = 0.0L;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto x = static_cast<long double>(v(i));
    sq += x * x;
  }
  return static_cast<double>(std::sqrt(sq));
}

std::string tag_hex(const Tag& tau) {
  ByteWriter w;
  write_tag(w, tau);
  return to_hex(w.bytes());
}

std::string signature_digest(const Signature& s) {
  ByteWriter w;
  write_signature(w, s);
  return to_hex(sha256(w.bytes()));
}

std::string message_hex(const Message& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ',';
    out += to_hex(m.symbols[i]);
  }
  return out.empty() ? "-" : out;
}

Symbol random_symbol(RandomStream& rng, std::string_view prefix) {
  Symbol s(prefix.begin(), prefix.end());
  Bytes body(16);
  rng.fill(body);
  s.insert(s.end(), body.begin(), body.end());
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

std::pair<PublicKey, SimTrapdoor> sim_keygen(const Params& params, const ZqMat& a,
                                             RandomStream& rng) {
  const auto n = static_cast<Eigen::Index>(params.n);
  const auto k = static_cast<Eigen::Index>(params.k);
  if (a.rows() != static_cast<Eigen::Index>(params.h) || a.cols() != n) {
    throw Error(ErrorCode::kLengthMismatch, "A must be h x n");
  }
  const double limit = params.sim_width * std::sqrt(static_cast<double>(params.n));
  SimTrapdoor trap;
  trap.gammas.resize(n, k);
  PublicKey pk;
  pk.params = params;
  pk.a = a;
  pk.hash_id = HashId::kShake256;
  for (int round = 0; round < kAlphaRetries; ++round) {
    for (Eigen::Index j = 0; j < k; ++j) {
      int attempt = 0;
      for (;; ++attempt) {
        if (attempt == kGammaRetries) {
          throw Error(ErrorCode::kGenerationFailed, "gamma norm stayed above s sqrt(n)");
        }
        IntVec g = sample_dom(n, params.sim_width, rng, params.tail_cut);
        if (column_norm(g) <= limit) {
          trap.gammas.col(j) = g;
          break;
        }
      }
    }
    pk.alphas = mul_mod(a, trap.gammas, params.q);
    if (rank_mod_q(pk.alphas, params.q) == static_cast<std::size_t>(k)) return {pk, trap};
  }
  throw Error(ErrorCode::kGenerationFailed,
              "simulated alphas stayed dependent after " + std::to_string(kAlphaRetries) +
                  " draws");
}

IntVec sim_column(const PublicKey& pk, const SimTrapdoor& trap,
                  std::span<const std::uint8_t> x) {
  const BitVector v = hash_symbol(x, pk.params.k, pk.hash_id);
  IntVec t = IntVec::Zero(trap.gammas.rows());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j]) t += trap.gammas.col(static_cast<Eigen::Index>(j));
  }
  return t;
}

Signature sim_sign(const PublicKey& pk, const SimTrapdoor& trap, const Message& x) {
  if (x.empty()) return {};
  Signature s;
  s.columns.resize(trap.gammas.rows(), static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    s.columns.col(static_cast<Eigen::Index>(i)) = sim_column(pk, trap, x.symbols[i]);
  }
  return s;
}

Signature lsh_sim_sign(const PublicKey& pk, const SimTrapdoor& trap, const Tag& tau,
                       const Message& v) {
  if (tau.size() != pk.params.n) {
    throw Error(ErrorCode::kLengthMismatch, "tag length differs from n");
  }
  Signature s = sim_sign(pk, trap, v);
  for (Eigen::Index i = 0; i < s.columns.rows(); ++i) {
    if (!tau.bits[static_cast<std::size_t>(i)]) s.columns.row(i) *= -1;
  }
  return s;
}

std::optional<SisSolution> extract_sis(const PublicKey& pk, const SimTrapdoor& trap,
                                       const Message& y, const Signature& sigma,
                                       const std::optional<Tag>& tau) {
  const bool ok = tau ? lsh_verify(pk, *tau, y, sigma) : verify(pk, y, sigma);
  if (!ok) throw Error(ErrorCode::kNotAForgery, "forgery does not verify");
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    IntVec z = sigma.columns.col(i);
    if (tau) {
      for (Eigen::Index r = 0; r < z.size(); ++r) {
        if (!tau->bits[static_cast<std::size_t>(r)]) z(r) = -z(r);
      }
    }
    z -= sim_column(pk, trap, y.symbols[static_cast<std::size_t>(i)]);
    if (z.isZero()) continue;
    SisSolution sol{z, column_norm(z)};
    if (!mul_mod(pk.a, sol.z, pk.params.q).isZero() || sol.norm > pk.params.sis_bound()) {
      throw Error(ErrorCode::kInvariantViolation, "extracted vector is not an SIS solution");
    }
    return sol;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::string_view forgery_class_name(ForgeryClass c) {
  switch (c) {
    case ForgeryClass::kNone: return "none";
    case ForgeryClass::kOutsideSpan: return "outside-span";
    case ForgeryClass::kTypeI: return "type-I";
    case ForgeryClass::kTypeII: return "type-II";
  }
  return "none";
}

namespace {

class Challenger final : public GameOracle {
 public:
  Challenger(const GameConfig& config, const PublicKey& pk, const SecretKey* sk,
             const SimTrapdoor* trap, RandomStream& rng, std::vector<std::string>& transcript)
      : config_(config), pk_(pk), sk_(sk), trap_(trap), rng_(rng), transcript_(transcript) {}

  Signature sign(const Symbol& x) override {
    if (config_.scheme != SchemeKind::kSH) {
      throw Error(ErrorCode::kInvalidArgument, "LSH game takes data-set queries");
    }
    const auto start = Clock::now();
    charge();
    transcript_.push_back("query symbol=" + to_hex(x));
    queried_.insert(x);
    Signature s;
    if (auto it = cache_.find(x); config_.deduplicate && it != cache_.end()) {
      s = it->second;
    } else {
      s = config_.mode == SignerMode::kReal
              ? shsig::sign(*sk_, pk_, Message::single(x), rng_, SignPolicy::kSingleSymbol)
              : sim_sign(pk_, *trap_, Message::single(x));
      if (config_.deduplicate) cache_.emplace(x, s);
    }
    transcript_.push_back("answer signature=" + signature_digest(s));
    oracle_seconds_ += seconds_since(start);
    return s;
  }

  TaggedAnswer sign_dataset(const std::vector<Symbol>& items) override {
    if (config_.scheme != SchemeKind::kLSH) {
      throw Error(ErrorCode::kInvalidArgument, "SH game takes single-symbol queries");
    }
    const auto start = Clock::now();
    charge();
    TaggedAnswer answer;
    answer.tag = random_tag(pk_.params.n, rng_);
    std::string line = "query dataset=";
    for (std::size_t i = 0; i < items.size(); ++i) line += (i ? "," : "") + to_hex(items[i]);
    transcript_.push_back(line);
    auto& symbols = datasets_[answer.tag];
    for (const auto& x : items) {
      symbols.insert(x);
      answer.signatures.push_back(
          config_.mode == SignerMode::kReal
              ? lsh_sign(*sk_, pk_, answer.tag, Message::single(x), rng_, SignPolicy::kSingleSymbol)
              : lsh_sim_sign(pk_, *trap_, answer.tag, Message::single(x)));
    }
    line = "answer tag=" + tag_hex(answer.tag) + " signatures=";
    for (std::size_t i = 0; i < answer.signatures.size(); ++i) {
      line += (i ? "," : "") + signature_digest(answer.signatures[i]);
    }
    transcript_.push_back(line);
    oracle_seconds_ += seconds_since(start);
    return answer;
  }

  std::size_t queries_used() const override { return used_; }
  std::size_t query_budget() const override { return config_.query_budget; }

  double oracle_seconds() const { return oracle_seconds_; }
  const std::set<Symbol>& queried() const { return queried_; }
  const std::map<Tag, std::set<Symbol>>& datasets() const { return datasets_; }

 private:
  void charge() {
    if (used_ >= config_.query_budget) {
      throw Error(ErrorCode::kQueryBudgetExceeded,
                  "budget of " + std::to_string(config_.query_budget) + " queries spent");
    }
    ++used_;
  }

  const GameConfig& config_;
  const PublicKey& pk_;
  const SecretKey* sk_;
  const SimTrapdoor* trap_;
  RandomStream& rng_;
  std::vector<std::string>& transcript_;
  std::size_t used_ = 0;
  double oracle_seconds_ = 0.0;
  std::set<Symbol> queried_;
  std::map<Symbol, Signature> cache_;
  std::map<Tag, std::set<Symbol>> datasets_;
};

std::string_view scheme_name(SchemeKind s) { return s == SchemeKind::kSH ? "sh" : "lsh"; }
std::string_view mode_name(SignerMode m) { return m == SignerMode::kReal ? "real" : "simulated"; }

}  // namespace

GameOutcome run_euf_cma_fmr(const GameConfig& config, const Adversary& adversary,
                            const Params& params, RandomStream& rng, const KeyPair* keys) {
  const auto start = Clock::now();
  GameOutcome out;
  RandomStream key_rng = rng.fork("keys");
  RandomStream challenger_rng = rng.fork("challenger");
  RandomStream adversary_rng = rng.fork("adversary");

  std::optional<KeyPair> owned;
  if (!keys) {
    owned = gen(params, key_rng);
    keys = &*owned;
  } else if (!(keys->pk.params == params)) {
    throw Error(ErrorCode::kParamsMismatch, "key pair was generated for other parameters");
  }
  PublicKey pk = keys->pk;
  std::optional<SimTrapdoor> trap;
  if (config.mode == SignerMode::kSimulated) {
    auto [sim_pk, sim_trap] = sim_keygen(params, keys->pk.a, key_rng);
    pk = std::move(sim_pk);
    trap = std::move(sim_trap);
  }

  out.transcript.push_back("setup scheme=" + std::string(scheme_name(config.scheme)) +
                           " mode=" + std::string(mode_name(config.mode)) +
                           " params=" + to_hex(params_digest(params)) +
                           " budget=" + std::to_string(config.query_budget));

  Challenger challenger(config, pk, &keys->sk, trap ? &*trap : nullptr, challenger_rng,
                        out.transcript);
  AdversaryContext ctx{config.scheme, pk, challenger, adversary_rng,
                       config.leak_trapdoor ? &keys->sk : nullptr};
  const auto adv_start = Clock::now();
  Forgery forgery = adversary(ctx);
  out.adversary_seconds = std::max(0.0, seconds_since(adv_start) - challenger.oracle_seconds());
  out.queries = challenger.queries_used();

  const auto n = static_cast<Eigen::Index>(params.n);
  if (!forgery.signature.empty() && forgery.signature.columns.rows() != n) {
    throw Error(ErrorCode::kMalformedAdversaryOutput, "signature vectors must have length n");
  }
  if (config.scheme == SchemeKind::kLSH) {
    if (!forgery.tag || forgery.tag->size() != params.n) {
      throw Error(ErrorCode::kMalformedAdversaryOutput, "LSH forgery needs an n-bit tag");
    }
  } else if (forgery.tag) {
    throw Error(ErrorCode::kMalformedAdversaryOutput, "SH forgery carries a tag");
  }

  out.transcript.push_back("forgery" +
                           (forgery.tag ? " tag=" + tag_hex(*forgery.tag) : std::string()) +
                           " message=" + message_hex(forgery.message) +
                           " signature=" + signature_digest(forgery.signature));

  if (config.scheme == SchemeKind::kSH) {
    out.verified = verify(pk, forgery.message, forgery.signature);
    if (!span_contains(challenger.queried(), forgery.message)) {
      out.forgery_class = ForgeryClass::kOutsideSpan;
    }
  } else {
    out.verified = lsh_verify(pk, *forgery.tag, forgery.message, forgery.signature);
    const auto it = challenger.datasets().find(*forgery.tag);
    if (it == challenger.datasets().end()) {
      out.forgery_class = ForgeryClass::kTypeI;
    } else if (!span_contains(it->second, forgery.message)) {
      out.forgery_class = ForgeryClass::kTypeII;
    }
  }
  out.win = out.verified && out.forgery_class != ForgeryClass::kNone;
  out.transcript.push_back("verdict verified=" + std::to_string(out.verified) +
                           " class=" + std::string(forgery_class_name(out.forgery_class)) +
                           " win=" + std::to_string(out.win));

  if (out.win && config.mode == SignerMode::kSimulated) {
    out.extraction_attempted = true;
    out.sis = extract_sis(pk, *trap, forgery.message, forgery.signature, forgery.tag);
    out.transcript.push_back(out.sis ? "extraction result=solution z=" +
                                           signature_digest(Signature{IntMat(out.sis->z)})
                                     : std::string("extraction result=bottom"));
  }
  out.total_seconds = seconds_since(start);
  out.overhead_seconds = out.total_seconds - out.adversary_seconds;
  return out;
}

std::string summarize(const GameOutcome& o) {
  std::ostringstream s;
  s << "verified=" << o.verified << '\n'
    << "forgery_class=" << forgery_class_name(o.forgery_class) << '\n'
    << "win=" << o.win << '\n'
    << "queries=" << o.queries << '\n'
    << "extraction=" << (!o.extraction_attempted ? "skipped" : o.sis ? "solution" : "bottom")
    << '\n';
  if (o.sis) s << "sis_norm=" << o.sis->norm << '\n';
  s << "total_seconds=" << o.total_seconds << '\n'
    << "adversary_seconds=" << o.adversary_seconds << '\n'
    << "overhead_seconds=" << o.overhead_seconds << '\n';
  return s.str();
}

Adversary replay_adversary() {
  return [](AdversaryContext& ctx) {
    const Symbol x = random_symbol(ctx.rng, "replay-");
    Forgery f;
    f.message = Message::single(x);
    if (ctx.scheme == SchemeKind::kSH) {
      f.signature = ctx.oracle.sign(x);
    } else {
      TaggedAnswer a = ctx.oracle.sign_dataset({x});
      f.tag = a.tag;
      f.signature = a.signatures.front();
    }
    return f;
  };
}

Adversary concat_adversary() {
  return [](AdversaryContext& ctx) {
    const Symbol x1 = random_symbol(ctx.rng, "concat-");
    const Symbol x2 = random_symbol(ctx.rng, "concat-");
    Forgery f;
    f.message.symbols = {x1, x2};
    if (ctx.scheme == SchemeKind::kSH) {
      const Signature s1 = ctx.oracle.sign(x1);
      const Signature s2 = ctx.oracle.sign(x2);
      f.signature = hom_concat(s1, s2);
    } else {
      TaggedAnswer a = ctx.oracle.sign_dataset({x1, x2});
      f.tag = a.tag;
      f.signature = combine(ctx.pk, a.tag, {{1, a.signatures[0]}, {1, a.signatures[1]}});
    }
    return f;
  };
}

Adversary random_sigma_adversary() {
  return [](AdversaryContext& ctx) {
    const Params& p = ctx.pk.params;
    Forgery f;
    f.message = Message::single(random_symbol(ctx.rng, "random-"));
    f.signature.columns = sample_dom(static_cast<Eigen::Index>(p.n), p.width, ctx.rng, p.tail_cut);
    if (ctx.scheme == SchemeKind::kLSH) f.tag = random_tag(p.n, ctx.rng);
    return f;
  };
}

Adversary trapdoor_leak_adversary() {
  return [](AdversaryContext& ctx) {
    if (!ctx.leaked_key) {
      throw Error(ErrorCode::kInvalidArgument, "trapdoor-leak adversary needs the leaked key");
    }
    const Params& p = ctx.pk.params;
    Forgery f;
    f.message = Message::single(random_symbol(ctx.rng, "fresh-"));
    if (ctx.scheme == SchemeKind::kSH) {
      if (ctx.oracle.query_budget() > 0) (void)ctx.oracle.sign(random_symbol(ctx.rng, "probe-"));
      f.signature = sign(*ctx.leaked_key, ctx.pk, f.message, ctx.rng);
    } else {
      if (ctx.oracle.query_budget() > 0) {
        (void)ctx.oracle.sign_dataset({random_symbol(ctx.rng, "probe-")});
      }
      f.tag = random_tag(p.n, ctx.rng);
      f.signature = lsh_sign(*ctx.leaked_key, ctx.pk, *f.tag, f.message, ctx.rng);
    }
    return f;
  };
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::int64_t, std::int64_t>> privacy_projection(const Params& params,
                                                                      const Signature& sigma) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  const double bin = params.width / 2.0;
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    out.emplace_back(j, static_cast<std::int64_t>(
                            std::floor(static_cast<double>(sigma.columns(0, j)) / bin)));
  }
  return out;
}

PrivacyReport run_privacy_experiment(const KeyPair& keys, const std::vector<Symbol>& v0,
                                     const std::vector<Symbol>& v1,
                                     const std::vector<LinearFunctional>& functionals,
                                     std::size_t samples, RandomStream& rng) {
  if (v0.size() != v1.size()) {
    throw Error(ErrorCode::kLengthMismatch, "tuples have different lengths");
  }
  std::vector<Message> m0, m1;
  for (const auto& s : v0) m0.push_back(Message::single(s));
  for (const auto& s : v1) m1.push_back(Message::single(s));
  std::vector<bool> used(v0.size(), false);
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    if (apply_functional(functionals[i], m0) != apply_functional(functionals[i], m1)) {
      throw Error(ErrorCode::kFunctionalMismatch,
                  "functional " + std::to_string(i) + " separates the two tuples");
    }
    for (std::size_t j = 0; j < v0.size(); ++j) used[j] = used[j] || functionals[i].coefficients[j] != 0;
  }

  using Key = std::pair<std::int64_t, std::int64_t>;
  std::vector<std::vector<Key>> proj[2];
  proj[0].resize(functionals.size());
  proj[1].resize(functionals.size());
  const PublicKey& pk = keys.pk;
  for (int b = 0; b < 2; ++b) {
    const auto& msgs = b == 0 ? m0 : m1;
    for (std::size_t round = 0; round < samples; ++round) {
      const Tag tau = random_tag(pk.params.n, rng);
      std::vector<Signature> sigs(msgs.size());
      for (std::size_t j = 0; j < msgs.size(); ++j) {
        if (used[j]) sigs[j] = lsh_sign(keys.sk, pk, tau, msgs[j], rng, SignPolicy::kSingleSymbol);
      }
      for (std::size_t i = 0; i < functionals.size(); ++i) {
        const Signature combined = apply_functional(functionals[i], sigs);
        const auto keys_i = privacy_projection(pk.params, combined);
        proj[b][i].insert(proj[b][i].end(), keys_i.begin(), keys_i.end());
      }
    }
  }
  PrivacyReport report;
  report.samples = samples;
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    report.distances.push_back(proj[0][i].empty() && proj[1][i].empty()
                                   ? 0.0
                                   : statistical_distance(proj[0][i], proj[1][i]));
  }
  return report;
}

PrivacyReport run_privacy_experiment(const Params& params, const std::vector<Symbol>& v0,
                                     const std::vector<Symbol>& v1,
                                     const std::vector<LinearFunctional>& functionals,
                                     std::size_t samples, RandomStream& rng) {
  RandomStream key_rng = rng.fork("keys");
  const KeyPair keys = setup(params, key_rng);
  return run_privacy_experiment(keys, v0, v1, functionals, samples, rng);
}

}  // namespace shsig
