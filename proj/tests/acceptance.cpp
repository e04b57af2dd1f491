// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "shsig/cli.hpp"
#include "shsig/harness.hpp"
#include "shsig/lsh_scheme.hpp"
#include "shsig/serde.hpp"
#include "shsig/sh_scheme.hpp"
#include "shsig/trapdoor.hpp"

namespace {

using namespace shsig;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << "  " << name
            << "  " << detail << std::endl;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s << std::setprecision(prec) << v;
  return s.str();
}

Symbol random_symbol(RandomStream& rng) {
  Symbol s(32);
  rng.fill(s);
  return s;
}

double chi_square_uniform_p(const std::vector<std::uint64_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

double column_norm(const IntMat& m, Eigen::Index j) {
  return std::sqrt(static_cast<double>(m.col(j).cast<long double>().squaredNorm()));
}

// ---------------------------------------------------------------------------

void completeness() {
  const Params p = toy_params();
  RandomStream rng(0xC001);
  const auto start = Clock::now();
  const int rounds = 1000;
  int accepted = 0;
  for (int i = 0; i < rounds; ++i) {
    const KeyPair kp = gen(p, rng);
    const Message x = Message::single(random_symbol(rng));
    accepted += verify(kp.pk, x, sign(kp.sk, kp.pk, x, rng, SignPolicy::kSingleSymbol));
  }
  const double secs = seconds_since(start);
  const double rate = static_cast<double>(accepted) / rounds;
  report(1, "completeness", rate >= 0.995 && secs < 600.0,
         "accepted=" + std::to_string(accepted) + "/" + std::to_string(rounds) +
             " rate=" + fmt(rate) + " (>= 0.995) runtime=" + fmt(secs) + "s (< 600s)");
}

void homomorphism() {
  const Params p = toy_params();
  RandomStream rng(0xC002);
  const KeyPair kp = gen(p, rng);
  int eligible = 0, accepted = 0;
  for (int i = 0; i < 500; ++i) {
    const Message x = Message::single(random_symbol(rng));
    const Message y = Message::single(random_symbol(rng));
    const Signature sx = sign(kp.sk, kp.pk, x, rng);
    const Signature sy = sign(kp.sk, kp.pk, y, rng);
    if (!verify(kp.pk, x, sx) || !verify(kp.pk, y, sy)) continue;
    ++eligible;
    accepted += verify(kp.pk, concat(x, y), hom_concat(sx, sy));
  }
  report(2, "homomorphism", eligible > 0 && accepted == eligible,
         "concatenated accepted=" + std::to_string(accepted) + "/" + std::to_string(eligible) +
             " (both inputs verified)");
}

void trapdoor_contract() {
  const Params p = toy_params();
  RandomStream rng(0xC003);
  int kernel_ok = 0, det_ok = 0;
  double worst_c = 0;
  std::vector<std::uint64_t> counts(p.q, 0);
  const int keys = 50;
  for (int i = 0; i < keys; ++i) {
    const TrapdoorPair t = trap_gen(p, rng);
    const BasisCheck c = check_basis(t.a, t.basis, t.scaled_inverse, p.q);
    kernel_ok += c.in_kernel;
    det_ok += c.is_basis() && c.det_exponent == p.h;
    const double gs = gram_schmidt_norms(t.basis).maxCoeff();
    worst_c = std::max(worst_c, trapdoor_quality(p, gs));
    for (Eigen::Index j = 0; j < t.a.cols(); ++j)
      for (Eigen::Index r = 0; r < t.a.rows(); ++r) ++counts[t.a(r, j)];
  }
  const double pval = chi_square_uniform_p(counts);
  report(3, "trapdoor contract",
         kernel_ok == keys && det_ok == keys && worst_c <= 10.0 && pval > 0.001,
         "AT=0:" + std::to_string(kernel_ok) + "/" + std::to_string(keys) +
             " |det T|=q^h:" + std::to_string(det_ok) + "/" + std::to_string(keys) +
             " C=" + fmt(worst_c) + " (<= 10) chi2 p=" + fmt(pval) + " (> 0.001)");
}

void sampler_correctness() {
  // Lambda_17^u([1 5]) in Z^2 with the short basis (-5, 1), (2, 3).
  const std::uint64_t q = 17;
  ZqMat a(1, 2);
  a << 1, 5;
  IntMat basis(2, 2);
  basis << -5, 2, 1, 3;
  const double s = 10.0;
  PreimageSampler sampler(a, basis, q);
  ZqVec u(1);
  u << 7;

  std::map<std::pair<std::int64_t, std::int64_t>, double> exact;
  double total = 0;
  const int box = static_cast<int>(std::ceil(13 * s));
  for (int x0 = -box; x0 <= box; ++x0) {
    for (int x1 = -box; x1 <= box; ++x1) {
      if (((x0 + 5 * x1) % 17 + 17) % 17 != 7) continue;
      const double w = std::exp(-M_PI * (x0 * x0 + x1 * x1) / (s * s));
      exact[{x0, x1}] = w;
      total += w;
    }
  }
  RandomStream rng(0xC004);
  const int draws = 100000;
  std::map<std::pair<std::int64_t, std::int64_t>, double> seen;
  int members = 0;
  for (int i = 0; i < draws; ++i) {
    const IntVec x = sampler.sample_pre(u, s, rng);
    members += mul_mod(a, x, q)(0) == 7;
    seen[{x(0), x(1)}] += 1.0;
  }
  double dist = 0;
  for (const auto& [pt, w] : exact) {
    const auto it = seen.find(pt);
    dist += std::abs(w / total - (it == seen.end() ? 0.0 : it->second / draws));
  }
  for (const auto& [pt, c] : seen) {
    if (!exact.contains(pt)) dist += c / draws;
  }
  dist *= 0.5;
  report(4, "sampler correctness", dist < 0.03 && members == draws,
         "SD=" + fmt(dist) + " (< 0.03) over " + std::to_string(draws) +
             " draws, membership=" + std::to_string(members) + "/" + std::to_string(draws));
}

struct NewBasisTally {
  int tags = 0, kernel = 0, det = 0;
  double gs_dev = 0;
};

void new_basis_run(const Params& p, int tags, std::uint64_t seed, NewBasisTally& tally) {
  RandomStream rng(seed);
  const TrapdoorPair t = trap_gen(p, rng);
  const RealVec gs_a = gram_schmidt_norms(t.basis);
  const BasisCheck base = check_basis(t.a, t.basis, t.scaled_inverse, p.q);
  for (int i = 0; i < tags; ++i) {
    const Tag tau = random_tag(p.n, rng);
    const IntMat h = tag_matrix(tau.bits, p.n);
    const ZqMat b = delegate_matrix(t.a, h, p.q);
    const IntMat t_b = new_basis(t.a, h, t.basis, p.q);
    // (H T)^{-1} = T^{-1} H, so q (H T)^{-1} = Q H.
    const IntMat q_b = t.scaled_inverse * h.diagonal().asDiagonal();
    const BasisCheck c = check_basis(b, t_b, q_b, p.q);
    ++tally.tags;
    tally.kernel += c.in_kernel;
    tally.det += c.is_basis() && base.is_basis() && c.det_exponent == base.det_exponent;
    const RealVec gs_b = gram_schmidt_norms(t_b);
    tally.gs_dev = std::max(tally.gs_dev, ((gs_b - gs_a).cwiseAbs().array() / gs_a.array()).maxCoeff());
  }
}

void new_basis() {
  NewBasisTally small, toy;
  new_basis_run(paper_strict_params(), 1000, 0xC005, small);
  new_basis_run(toy_params(), 10, 0xC105, toy);
  auto ok = [](const NewBasisTally& t) {
    return t.kernel == t.tags && t.det == t.tags && t.gs_dev <= 1e-9;
  };
  auto line = [](const char* label, const NewBasisTally& t) {
    return std::string(label) + ": BT_B=0 " + std::to_string(t.kernel) + "/" +
           std::to_string(t.tags) + ", |det| kept " + std::to_string(t.det) + "/" +
           std::to_string(t.tags) + ", max rel GS dev " + fmt(t.gs_dev, 3);
  };
  report(5, "NewBasis", ok(small) && ok(toy),
         line("n=256", small) + "; " + line("n=1536", toy) + " (GS tol 1e-9)");
}

void lsh_correctness() {
  const Params p = toy_params();
  RandomStream rng(0xC006);
  const KeyPair kp = setup(p, rng);
  int rounds = 500, accepted = 0, cross = 0, cross_rejected = 0;
  for (int r = 0; r < rounds; ++r) {
    const Tag tau = random_tag(p.n, rng);
    const std::size_t l = 1 + rng.uniform_below(4);
    std::vector<Message> msgs;
    std::vector<std::pair<std::uint64_t, Signature>> pairs;
    std::vector<std::uint64_t> coeffs;
    for (std::size_t i = 0; i < l; ++i) {
      msgs.push_back(Message::single(random_symbol(rng)));
      const std::uint64_t c = rng.uniform_below(16);
      coeffs.push_back(c);
      pairs.emplace_back(c, lsh_sign(kp.sk, kp.pk, tau, msgs.back(), rng));
    }
    const Signature combined = combine(kp.pk, tau, pairs);
    const Message y = apply_functional(LinearFunctional(coeffs), msgs);
    accepted += lsh_verify(kp.pk, tau, y, combined);
    if (!y.empty()) {
      ++cross;
      cross_rejected += !lsh_verify(kp.pk, random_tag(p.n, rng), y, combined);
    }
  }
  const double acc = static_cast<double>(accepted) / rounds;
  const double rej = static_cast<double>(cross_rejected) / cross;
  report(6, "LSH correctness + Combine", acc >= 0.995 && rej >= 0.999,
         "accepted=" + std::to_string(accepted) + "/" + std::to_string(rounds) + " (>= 0.995)" +
             " cross-tag rejected=" + std::to_string(cross_rejected) + "/" + std::to_string(cross) +
             " (>= 0.999)");
}

void reduction() {
  const Params p = toy_params();
  RandomStream rng(0xC007);
  const KeyPair kp = gen(p, rng);
  int wins = 0, solutions = 0, bottoms = 0, checked = 0;
  double overhead = 0;
  for (int i = 0; i < 200; ++i) {
    GameConfig config;
    config.scheme = i % 2 == 0 ? SchemeKind::kSH : SchemeKind::kLSH;
    config.mode = SignerMode::kSimulated;
    config.query_budget = 4;
    config.leak_trapdoor = true;
    RandomStream game_rng = rng.fork("game");
    const GameOutcome out = run_euf_cma_fmr(config, trapdoor_leak_adversary(), p, game_rng, &kp);
    overhead += out.overhead_seconds;
    if (!out.win) continue;
    ++wins;
    if (!out.sis) {
      ++bottoms;
      continue;
    }
    ++solutions;
    const auto& z = out.sis->z;
    checked += mul_mod(kp.pk.a, z, p.q).isZero() && !z.isZero() && out.sis->norm > 0 &&
               out.sis->norm <= p.sis_bound();
  }
  const double rate = wins ? static_cast<double>(checked) / wins : 0.0;
  report(7, "reduction executability", wins > 0 && rate >= 0.99 && checked == solutions,
         "wins=" + std::to_string(wins) + "/200 checked SIS solutions=" + std::to_string(checked) +
             " (" + fmt(rate) + " >= 0.99) bottom=" + std::to_string(bottoms) +
             " mean overhead=" + fmt(overhead / 200) + "s");
}

// Bin column norms at 1% of V sqrt(n).
std::int64_t norm_bin(const Params& p, double norm) {
  return static_cast<std::int64_t>(std::floor(norm / (0.01 * p.width * std::sqrt(double(p.n)))));
}

void real_vs_simulated() {
  const Params p = toy_params();
  RandomStream rng(0xC008);
  const KeyPair kp = gen(p, rng);
  const auto [sim_pk, trap] = sim_keygen(p, kp.pk.a, rng);
  const int samples = 10000;

  std::vector<std::int64_t> real_bins, sim_bins, real_full, sim_full;
  for (int i = 0; i < samples; ++i) {
    const Message x = Message::single(random_symbol(rng));
    real_bins.push_back(norm_bin(p, column_norm(sign(kp.sk, kp.pk, x, rng).columns, 0)));
    const Message y = Message::single(random_symbol(rng));
    sim_bins.push_back(norm_bin(p, column_norm(sim_sign(sim_pk, trap, y).columns, 0)));
  }
  const double dist = statistical_distance(real_bins, sim_bins);
  report(8, "real-vs-simulated closeness", dist < 0.05,
         "column-norm SD=" + fmt(dist) + " (< 0.05), " + std::to_string(samples) +
             " samples per side, random symbols");

  // Diagnostic: restrict both sides to symbols whose hash has full weight k.
  std::vector<Symbol> full;
  while (full.size() < 2u * samples) {
    Symbol s = random_symbol(rng);
    const BitVector v = hash_symbol(s, p.k);
    if (std::all_of(v.begin(), v.end(), [](auto b) { return b == 1; })) full.push_back(std::move(s));
  }
  for (int i = 0; i < samples; ++i) {
    const Message x = Message::single(full[2 * i]);
    real_full.push_back(norm_bin(p, column_norm(sign(kp.sk, kp.pk, x, rng).columns, 0)));
    const Message y = Message::single(full[2 * i + 1]);
    sim_full.push_back(norm_bin(p, column_norm(sim_sign(sim_pk, trap, y).columns, 0)));
  }
  std::cout << "      diagnostic 8  full-weight symbols only: column-norm SD="
            << fmt(statistical_distance(real_full, sim_full)) << std::endl;
}

void injectivity() {
  const Params p = derive_params(1536, 12, 257, Strictness::kRelaxed);
  RandomStream rng(0xC009);
  const ZqMat alphas = sample_alphas(p, rng);
  std::set<std::vector<std::uint64_t>> sums;
  for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
    BitVector v(12);
    for (int j = 0; j < 12; ++j) v[j] = (mask >> j) & 1;
    const ZqVec b = syndrome(v, alphas, p.q);
    sums.insert(std::vector<std::uint64_t>(b.data(), b.data() + b.size()));
  }
  const std::size_t collisions = 4096 - sums.size();
  report(9, "syndrome injectivity", collisions == 0,
         "k=12: " + std::to_string(sums.size()) + "/4096 distinct subset sums, collisions=" +
             std::to_string(collisions));
}

void privacy() {
  const Params p = toy_params();
  RandomStream rng(0xC00A);
  const KeyPair kp = setup(p, rng);
  const std::vector<Symbol> v0 = {symbol_from_string("shared"), symbol_from_string("left")};
  const std::vector<Symbol> v1 = {symbol_from_string("shared"), symbol_from_string("right")};
  const PrivacyReport r =
      run_privacy_experiment(kp, v0, v1, {LinearFunctional({3, 0})}, 10000, rng);
  report(10, "weak context hiding", r.distances.front() < 0.05,
         "projected SD=" + fmt(r.distances.front()) + " (< 0.05) at N=" +
             std::to_string(r.samples) + ", V0!=V1, f=(3,0)");
}

Bytes slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::vector<const char*> argv{"shsig"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

void serialization() {
  int trials = 0, round_trips = 0;
  for (const Params& p : {paper_strict_params(), toy_params()}) {
    RandomStream rng(0xC00B);
    const KeyPair kp = gen(p, rng);
    const Tag tau = random_tag(p.n, rng);
    const Message m{{random_symbol(rng), Symbol{}, symbol_from_string("x")}};
    const Signature s = sign(kp.sk, kp.pk, m, rng);
    auto check = [&](bool ok) {
      ++trials;
      round_trips += ok;
    };
    check(decode_params(encode_params(p)) == p);
    check(decode_public_key(encode_public_key(kp.pk)) == kp.pk);
    check(decode_secret_basis(encode_secret_key(p, kp.sk), p) == kp.sk.basis);
    check(decode_signature(encode_signature(p, s), p) == s);
    check(decode_signature(encode_signature(p, Signature{}), p) == Signature{});
    check(decode_message(encode_message(m), &p) == m);
    check(decode_message(encode_message(Message{}, &p), &p) == Message{});
    check(decode_tag(encode_tag(p, tau), p) == tau);
  }

  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "shsig-acceptance";
  fs::remove_all(root);
  bool identical = true, pipeline = true;
  for (int run = 0; run < 2; ++run) {
    const fs::path d = root / ("run" + std::to_string(run));
    fs::create_directories(d);
    const std::string k = (d / "key").string();
    pipeline &= run_cli({"keygen", "--preset", "toy", "--seed", "a1b2", "--out", k}) == 0;
    pipeline &= run_cli({"sign", "--pk", k + ".pk", "--sk", k + ".sk", "--symbol", "hello",
                         "--symbol", "world", "--seed", "c3", "--out", (d / "s.sig").string()}) == 0;
    pipeline &= run_cli({"tag", "--pk", k + ".pk", "--seed", "d4", "--out", (d / "t.tag").string()}) == 0;
    pipeline &= run_cli({"lsh-sign", "--pk", k + ".pk", "--sk", k + ".sk", "--tag",
                         (d / "t.tag").string(), "--symbol", "data", "--seed", "e5", "--out",
                         (d / "l.sig").string()}) == 0;
    std::string verdict;
    pipeline &= run_cli({"verify", "--pk", k + ".pk", "--symbol", "hello", "--symbol", "world",
                         "--sig", (d / "s.sig").string()}, &verdict) == 0 && verdict == "ACCEPT\n";
    pipeline &= run_cli({"lsh-verify", "--pk", k + ".pk", "--tag", (d / "t.tag").string(),
                         "--symbol", "data", "--sig", (d / "l.sig").string()}, &verdict) == 0 &&
                verdict == "ACCEPT\n";
  }
  for (const char* name : {"key.pk", "key.sk", "s.sig", "t.tag", "l.sig"}) {
    identical &= slurp(root / "run0" / name) == slurp(root / "run1" / name) &&
                 !slurp(root / "run0" / name).empty();
  }
  fs::remove_all(root);
  report(11, "serialization + CLI",
         round_trips == trials && identical && pipeline,
         "round trips " + std::to_string(round_trips) + "/" + std::to_string(trials) +
             ", seeded pipeline " + (pipeline ? "ok" : "broken") + ", outputs " +
             (identical ? "byte-identical" : "differ") + " across two runs");
}

}  // namespace

int main(int argc, char** argv) {
  // Optional filter: list of criterion numbers to run.
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  const std::vector<void (*)()> criteria = {
      completeness, homomorphism, trapdoor_contract, sampler_correctness,
      new_basis,    lsh_correctness, reduction,     real_vs_simulated,
      injectivity,  privacy,      serialization};
  const auto start = Clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.contains(static_cast<int>(i + 1))) continue;
    const auto t = Clock::now();
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "error", false, e.what());
    }
    std::cout << "      (" << fmt(seconds_since(t), 3) << "s)" << std::endl;
  }
  std::cout << "acceptance: " << failures << " failing, total " << fmt(seconds_since(start), 4)
            << "s" << std::endl;
  return failures == 0 ? 0 : 1;
}
