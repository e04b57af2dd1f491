#include "shsig/gauss_sampler.hpp"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "shsig/trapdoor.hpp"
#include "test_support.hpp"

namespace shsig {
namespace {

TEST(SampleZTest, MatchesExactPmf) {
  constexpr double kS = 4.0;
  constexpr double kC = 0.3;
  constexpr int kDraws = 50000;
  RandomStream rng(21);
  std::map<std::int64_t, int> counts;
  for (int i = 0; i < kDraws; ++i) ++counts[sample_z(kS, kC, rng)];
  double norm = 0.0;
  for (std::int64_t x = -60; x <= 60; ++x) norm += gaussian_weight(static_cast<double>(x), kS, kC);
  double sd = 0.0;
  for (std::int64_t x = -60; x <= 60; ++x) {
    const double p = gaussian_weight(static_cast<double>(x), kS, kC) / norm;
    const double e = counts.count(x) ? static_cast<double>(counts[x]) / kDraws : 0.0;
    sd += std::abs(p - e);
  }
  EXPECT_LT(0.5 * sd, 0.02);
}

TEST(SampleZTest, MomentsFollowWidth) {
  // Variance of D_{Z,s} is close to s^2 / (2 pi) for s well above smoothing.
  constexpr double kS = 40.0;
  RandomStream rng(22);
  double sum = 0.0, sq = 0.0;
  constexpr int kDraws = 40000;
  for (int i = 0; i < kDraws; ++i) {
    const double x = static_cast<double>(sample_z(kS, 100.0, rng)) - 100.0;
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / kDraws, 0.0, 0.5);
  EXPECT_NEAR(sq / kDraws, kS * kS / (2 * M_PI), 0.05 * kS * kS / (2 * M_PI));
}

TEST(SampleZTest, RespectsTailCut) {
  RandomStream rng(23);
  for (int i = 0; i < 5000; ++i) {
    const auto x = sample_z(3.0, -2.5, rng, 2);
    EXPECT_GE(x, -8);
    EXPECT_LE(x, 3);
  }
}

TEST(SampleZTest, RejectsBadArguments) {
  RandomStream rng(24);
  EXPECT_SHSIG_ERROR(sample_z(0.0, 0.0, rng), kInvalidArgument);
  EXPECT_SHSIG_ERROR(sample_z(-1.0, 0.0, rng), kInvalidArgument);
  EXPECT_SHSIG_ERROR(sample_z(1.0, NAN, rng), kInvalidArgument);
  EXPECT_SHSIG_ERROR(sample_z(0.1, 0.5, rng, 1), kSamplerStuck);
}

TEST(SampleDomTest, ShapeAndDeterminism) {
  RandomStream a(25), b(25);
  const IntVec x = sample_dom(64, 10.0, a);
  EXPECT_EQ(x.size(), 64);
  EXPECT_EQ(x, sample_dom(64, 10.0, b));
}

// A = [1 5] mod 17; the columns (-5, 1) and (2, 3) span Lambda^perp (det 17).
PreimageSampler small_sampler() {
  ZqMat a(1, 2);
  a << 1, 5;
  IntMat t(2, 2);
  t << -5, 2, 1, 3;
  return PreimageSampler(a, t, 17);
}

TEST(PreimageSamplerTest, CosetDistribution) {
  const auto sampler = small_sampler();
  ZqVec u(1);
  u << 7;
  constexpr double kS = 10.0;
  constexpr int kDraws = 40000;
  RandomStream rng(26);
  std::map<std::pair<std::int64_t, std::int64_t>, int> counts;
  for (int i = 0; i < kDraws; ++i) {
    const IntVec x = sampler.sample_pre(u, kS, rng);
    ASSERT_EQ((x(0) + 5 * x(1) - 7) % 17, 0);
    ++counts[{x(0), x(1)}];
  }
  std::map<std::pair<std::int64_t, std::int64_t>, double> exact;
  double total = 0.0;
  for (std::int64_t x1 = -80; x1 <= 80; ++x1)
    for (std::int64_t x0 = -80; x0 <= 80; ++x0) {
      if (((x0 + 5 * x1 - 7) % 17 + 17) % 17 != 0) continue;
      const double w = std::exp(-M_PI * static_cast<double>(x0 * x0 + x1 * x1) / (kS * kS));
      exact[{x0, x1}] = w;
      total += w;
    }
  double sd = 0.0;
  for (const auto& [pt, w] : exact) {
    const auto it = counts.find(pt);
    sd += std::abs(w / total - (it == counts.end() ? 0.0 : it->second / double(kDraws)));
  }
  EXPECT_LT(0.5 * sd, 0.03);
}

TEST(PreimageSamplerTest, GramSchmidtNorms) {
  const auto sampler = small_sampler();
  // |R_11 R_22| = |det T| = 17; R_11 = |(-5, 1)|.
  EXPECT_NEAR(sampler.gram_schmidt_norms()(0), std::sqrt(26.0), 1e-12);
  EXPECT_NEAR(sampler.gram_schmidt_norms().prod(), 17.0, 1e-9);
}

TEST(PreimageSamplerTest, LatticeSamplesAreInKernel) {
  const auto sampler = small_sampler();
  RandomStream rng(27);
  RealVec c(2);
  c << 3.5, -2.0;
  for (int i = 0; i < 200; ++i) {
    const IntVec x = sampler.sample_gaussian(c, 10.0, rng);
    EXPECT_EQ(((x(0) + 5 * x(1)) % 17 + 17) % 17, 0);
  }
  EXPECT_SHSIG_ERROR(sampler.sample_gaussian(RealVec::Zero(3), 10.0, rng), kLengthMismatch);
}

TEST(PreimageSamplerTest, NoSolutionOutsideColumnSpace) {
  ZqMat a(2, 2);
  a << 1, 5, 2, 10;
  IntMat t(2, 2);
  t << -5, 2, 1, 3;
  PreimageSampler sampler(a, t, 17);
  ZqVec u(2);
  u << 1, 1;
  RandomStream rng(28);
  EXPECT_SHSIG_ERROR(sampler.sample_pre(u, 10.0, rng), kNoSolution);
}

TEST(PreimageSamplerTest, RejectsBadShapes) {
  ZqMat a(1, 3);
  a << 1, 2, 3;
  EXPECT_SHSIG_ERROR(PreimageSampler(a, IntMat::Identity(2, 2), 17), kInvalidBasis);
}

TEST(PreimageSamplerTest, TrapdoorPreimagesAreShort) {
  const Params p = testing::tiny_params();
  RandomStream rng(29);
  const auto pair = trap_gen(p, rng);
  PreimageSampler sampler(pair.a, pair.basis, p.q);
  for (int i = 0; i < 20; ++i) {
    ZqVec u(static_cast<Eigen::Index>(p.h));
    for (Eigen::Index j = 0; j < u.size(); ++j) u(j) = rng.uniform_below(p.q);
    const IntVec x = sampler.sample_pre(u, p.width, rng);
    EXPECT_EQ(mul_mod(pair.a, x, p.q), u);
    EXPECT_LE(x.cast<double>().norm(), p.width * std::sqrt(static_cast<double>(p.n)));
  }
}

TEST(PreimageSamplerTest, DelegatedSamplesFlipSigns) {
  const auto sampler = small_sampler();
  ZqVec u(1);
  u << 7;
  const std::vector<std::int8_t> signs{1, -1};
  RandomStream a(30), b(30);
  const IntVec plain = sampler.sample_pre(u, 10.0, a);
  const IntVec flipped = sampler.sample_pre_delegated(signs, u, 10.0, b);
  EXPECT_EQ(flipped(0), plain(0));
  EXPECT_EQ(flipped(1), -plain(1));
  // B = A H^T = [1 -5] sends the flipped vector to u.
  EXPECT_EQ(((flipped(0) - 5 * flipped(1) - 7) % 17 + 17) % 17, 0);
  const std::vector<std::int8_t> short_signs{1};
  EXPECT_SHSIG_ERROR(sampler.sample_pre_delegated(short_signs, u, 10.0, a), kLengthMismatch);
}

}  // namespace
}  // namespace shsig
