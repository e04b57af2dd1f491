#include "shsig/cli.hpp"

#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shsig/harness.hpp"
#include "shsig/hashing.hpp"
#include "shsig/lsh_scheme.hpp"
#include "shsig/serde.hpp"
#include "shsig/sh_scheme.hpp"

namespace shsig {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("short write to " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Options shared by subcommands that need parameters.
struct ParamsSource {
  std::string preset = "toy";
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "Parameter preset")
        ->check(CLI::IsMember({"toy", "paper-strict"}));
    cmd->add_option("--params-file", file, "SGSP parameter record (overrides --preset)");
  }
  Params load() const { return file.empty() ? preset_params(preset) : decode_params(read_file(file)); }
};

// Message given as an SGMS file, a text file (one symbol per line) or
// repeated --symbol values.
struct MessageSource {
  std::string file;
  std::string lines;
  std::vector<std::string> symbols;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--message", file, "SGMS message file");
    auto* l = cmd->add_option("--lines", lines, "Text file, one symbol per line");
    auto* s = cmd->add_option("--symbol", symbols, "Symbol text (repeatable)");
    f->excludes(l)->excludes(s);
    l->excludes(s);
  }
  Message load(const Params* params) const {
    if (!file.empty()) return decode_message(read_file(file), params);
    Message m;
    for (const auto& s : lines.empty() ? symbols : read_lines(lines)) {
      m.symbols.push_back(symbol_from_string(s));
    }
    return m;
  }
};

RandomStream make_rng(const std::string& seed_hex, std::string_view label) {
  if (seed_hex.empty()) return RandomStream::from_entropy();
  const Bytes seed = from_hex(seed_hex);
  RandomStream root{std::span<const std::uint8_t>(seed)};
  return root.fork(label);
}

std::vector<std::uint64_t> parse_coeffs(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      if (item.empty() || item.front() == '-') throw std::invalid_argument(item);
      v = std::stoull(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorCode::kInvalidArgument, "bad coefficient '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvariantViolation:
    case ErrorCode::kSamplerStuck:
    case ErrorCode::kGenerationFailed:
    case ErrorCode::kRankDeficient:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice semigroup-homomorphic signatures"};
  app.require_subcommand(1);

  ParamsSource params_src;
  MessageSource msg_src;
  std::string seed, out_path, pk_path, sk_path, sig_path, tag_path, coeffs, message_out;
  std::vector<std::string> sig_paths, message_paths;
  bool single_symbol = false;

  auto* params_cmd = app.add_subcommand("params", "Print (and optionally save) parameters");
  params_src.attach(params_cmd);
  params_cmd->add_option("--out", out_path, "Write the SGSP record here");

  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair");
  params_src.attach(keygen_cmd);
  keygen_cmd->add_option("--seed", seed, "Hex seed for reproducible output");
  keygen_cmd->add_option("--out", out_path, "Output prefix (writes PREFIX.pk and PREFIX.sk)")
      ->required();

  auto* message_cmd = app.add_subcommand("message", "Build an SGMS message file");
  msg_src.attach(message_cmd);
  message_cmd->add_option("--out", out_path)->required();

  auto* tag_cmd = app.add_subcommand("tag", "Draw a uniform data-set tag");
  tag_cmd->add_option("--pk", pk_path)->required();
  tag_cmd->add_option("--seed", seed);
  tag_cmd->add_option("--out", out_path)->required();

  auto* sign_cmd = app.add_subcommand("sign", "Sign a message");
  sign_cmd->add_option("--pk", pk_path)->required();
  sign_cmd->add_option("--sk", sk_path)->required();
  msg_src.attach(sign_cmd);
  sign_cmd->add_option("--seed", seed);
  sign_cmd->add_flag("--policy-single-symbol", single_symbol,
                     "Refuse to sign more than one symbol");
  sign_cmd->add_option("--out", out_path)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature");
  verify_cmd->add_option("--pk", pk_path)->required();
  msg_src.attach(verify_cmd);
  verify_cmd->add_option("--sig", sig_path)->required();

  auto* concat_cmd = app.add_subcommand("concat", "Concatenate signatures (and messages)");
  concat_cmd->add_option("--pk", pk_path)->required();
  concat_cmd->add_option("--sig", sig_paths)->required();
  concat_cmd->add_option("--message-in", message_paths, "SGMS files to concatenate alongside");
  concat_cmd->add_option("--message-out", message_out);
  concat_cmd->add_option("--out", out_path)->required();

  auto* lsh_sign_cmd = app.add_subcommand("lsh-sign", "Sign a message under a data-set tag");
  lsh_sign_cmd->add_option("--pk", pk_path)->required();
  lsh_sign_cmd->add_option("--sk", sk_path)->required();
  lsh_sign_cmd->add_option("--tag", tag_path)->required();
  msg_src.attach(lsh_sign_cmd);
  lsh_sign_cmd->add_option("--seed", seed);
  lsh_sign_cmd->add_flag("--policy-single-symbol", single_symbol);
  lsh_sign_cmd->add_option("--out", out_path)->required();

  auto* combine_cmd = app.add_subcommand("lsh-combine", "Linear combination c1 s1 || ... || cl sl");
  combine_cmd->add_option("--pk", pk_path)->required();
  combine_cmd->add_option("--tag", tag_path)->required();
  combine_cmd->add_option("--sig", sig_paths)->required();
  combine_cmd->add_option("--coeffs", coeffs, "Comma-separated coefficients")->required();
  combine_cmd->add_option("--message-in", message_paths, "SGMS files combined alongside");
  combine_cmd->add_option("--message-out", message_out);
  combine_cmd->add_option("--out", out_path)->required();

  auto* lsh_verify_cmd = app.add_subcommand("lsh-verify", "Verify under a data-set tag");
  lsh_verify_cmd->add_option("--pk", pk_path)->required();
  lsh_verify_cmd->add_option("--tag", tag_path)->required();
  msg_src.attach(lsh_verify_cmd);
  lsh_verify_cmd->add_option("--sig", sig_path)->required();

  std::string scheme = "sh", mode = "real", adversary = "replay", transcript_path;
  std::size_t queries = 16;
  bool no_dedup = false;
  auto* game_cmd = app.add_subcommand("game", "Run one unforgeability game");
  params_src.attach(game_cmd);
  game_cmd->add_option("--seed", seed);
  game_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"sh", "lsh"}));
  game_cmd->add_option("--mode", mode)->check(CLI::IsMember({"real", "simulated"}));
  game_cmd->add_option("--adversary", adversary)
      ->check(CLI::IsMember({"replay", "concat", "random", "leak"}));
  game_cmd->add_option("--queries", queries);
  game_cmd->add_flag("--no-dedup", no_dedup, "Answer repeated queries afresh");
  game_cmd->add_option("--transcript", transcript_path);

  std::size_t samples = 1000;
  std::vector<std::string> v0 = {"alpha", "beta"}, v1 = {"alpha", "gamma"};
  std::string privacy_coeffs = "2,0";
  auto* privacy_cmd = app.add_subcommand("privacy", "Weak context hiding experiment");
  params_src.attach(privacy_cmd);
  privacy_cmd->add_option("--seed", seed);
  privacy_cmd->add_option("--samples", samples);
  privacy_cmd->add_option("--v0", v0, "First tuple of symbols");
  privacy_cmd->add_option("--v1", v1, "Second tuple of symbols");
  privacy_cmd->add_option("--coeffs", privacy_coeffs, "Functional coefficients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*params_cmd) {
      const Params p = params_src.load();
      out << "n=" << p.n << "\nq=" << p.q << "\nk=" << p.k << "\nh=" << p.h
          << "\nV=" << p.width << "\ns_sim=" << p.sim_width << "\ntail_cut=" << p.tail_cut
          << "\nstrictness=" << (p.strictness == Strictness::kPaperStrict ? "paper-strict" : "relaxed")
          << "\nnorm_bound=" << p.norm_bound() << "\ndigest=" << to_hex(params_digest(p)) << '\n';
      if (!out_path.empty()) write_file(out_path, encode_params(p));
      return kExitOk;
    }
    if (*keygen_cmd) {
      const Params p = params_src.load();
      RandomStream rng = make_rng(seed, "keygen");
      const KeyPair kp = gen(p, rng);
      write_file(out_path + ".pk", encode_public_key(kp.pk));
      write_file(out_path + ".sk", encode_secret_key(p, kp.sk));
      return kExitOk;
    }
    if (*message_cmd) {
      write_file(out_path, encode_message(msg_src.load(nullptr)));
      return kExitOk;
    }
    if (*game_cmd || *privacy_cmd) {
      const Params p = params_src.load();
      RandomStream rng = make_rng(seed, *game_cmd ? "game" : "privacy");
      if (*game_cmd) {
        GameConfig config;
        config.scheme = scheme == "sh" ? SchemeKind::kSH : SchemeKind::kLSH;
        config.mode = mode == "real" ? SignerMode::kReal : SignerMode::kSimulated;
        config.query_budget = queries;
        config.deduplicate = !no_dedup;
        config.leak_trapdoor = adversary == "leak";
        const Adversary adv = adversary == "replay"   ? replay_adversary()
                              : adversary == "concat" ? concat_adversary()
                              : adversary == "random" ? random_sigma_adversary()
                                                      : trapdoor_leak_adversary();
        const GameOutcome outcome = run_euf_cma_fmr(config, adv, p, rng);
        out << summarize(outcome);
        if (!transcript_path.empty()) {
          std::string text;
          for (const auto& line : outcome.transcript) text += line + '\n';
          write_file(transcript_path, Bytes(text.begin(), text.end()));
        }
      } else {
        std::vector<Symbol> s0, s1;
        for (const auto& s : v0) s0.push_back(symbol_from_string(s));
        for (const auto& s : v1) s1.push_back(symbol_from_string(s));
        const PrivacyReport report = run_privacy_experiment(
            p, s0, s1, {LinearFunctional(parse_coeffs(privacy_coeffs))}, samples, rng);
        out << "samples=" << report.samples << "\ndistance=" << report.distances.front() << '\n';
      }
      return kExitOk;
    }

    // Everything below works relative to a public key.
    const PublicKey pk = decode_public_key(read_file(pk_path));
    const Params& p = pk.params;
    const SignPolicy policy = single_symbol ? SignPolicy::kSingleSymbol : SignPolicy::kAnyMessage;

    if (*tag_cmd) {
      RandomStream rng = make_rng(seed, "tag");
      write_file(out_path, encode_tag(p, random_tag(p.n, rng)));
      return kExitOk;
    }
    if (*sign_cmd || *lsh_sign_cmd) {
      const Message x = msg_src.load(&p);
      const SecretKey sk = decode_secret_key(read_file(sk_path), pk);
      RandomStream rng = make_rng(seed, "sign");
      const Signature sigma = *sign_cmd ? sign(sk, pk, x, rng, policy)
                                        : lsh_sign(sk, pk, decode_tag(read_file(tag_path), p), x,
                                                   rng, policy);
      write_file(out_path, encode_signature(p, sigma));
      return kExitOk;
    }
    if (*verify_cmd || *lsh_verify_cmd) {
      const Message x = msg_src.load(&p);
      const Signature sigma = decode_signature(read_file(sig_path), p);
      const bool ok = *verify_cmd ? verify(pk, x, sigma)
                                  : lsh_verify(pk, decode_tag(read_file(tag_path), p), x, sigma);
      out << (ok ? "ACCEPT" : "REJECT") << '\n';
      return ok ? kExitOk : kExitReject;
    }
    if (*concat_cmd || *combine_cmd) {
      std::vector<Signature> sigs;
      for (const auto& path : sig_paths) sigs.push_back(decode_signature(read_file(path), p));
      std::vector<Message> msgs;
      for (const auto& path : message_paths) msgs.push_back(decode_message(read_file(path), &p));
      if (!message_out.empty() && msgs.size() != sigs.size()) {
        throw Error(ErrorCode::kLengthMismatch, "need one --message-in per --sig");
      }
      LinearFunctional f;
      if (*combine_cmd) {
        f = LinearFunctional(parse_coeffs(coeffs));
      } else {
        f = LinearFunctional(std::vector<std::uint64_t>(sigs.size(), 1));
      }
      Signature result;
      if (*combine_cmd) {
        const Tag tau = decode_tag(read_file(tag_path), p);
        if (f.coefficients.size() != sigs.size()) {
          throw Error(ErrorCode::kLengthMismatch, "need one coefficient per signature");
        }
        std::vector<std::pair<std::uint64_t, Signature>> pairs;
        for (std::size_t i = 0; i < sigs.size(); ++i) pairs.emplace_back(f.coefficients[i], sigs[i]);
        result = combine(pk, tau, pairs);
      } else {
        result = apply_functional(f, sigs);
      }
      write_file(out_path, encode_signature(p, result));
      if (!message_out.empty()) write_file(message_out, encode_message(apply_functional(f, msgs)));
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "IoError: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "InternalError: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace shsig
