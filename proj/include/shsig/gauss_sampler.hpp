#ifndef SHSIG_GAUSS_SAMPLER_HPP_
#define SHSIG_GAUSS_SAMPLER_HPP_

#include <atomic>
#include <cstdint>
#include <span>

#include "shsig/params.hpp"
#include "shsig/random.hpp"
#include "shsig/types.hpp"
#include "shsig/zq_linalg.hpp"

namespace shsig {

inline constexpr int kSamplerRetryCap = 1'000'000;

/// rho_{s,c}(x) = exp(-pi |x - c|^2 / s^2).
inline double gaussian_weight(double x, double s, double c) {
  const double d = x - c;
  return std::exp(-M_PI * d * d / (s * s));
}

/// Discrete Gaussian over Z with width s and center c, restricted to
/// [c - t s, c + t s]. Rejection sampling against a uniform proposal.
std::int64_t sample_z(double s, double c, RandomStream& rng,
                      std::uint32_t tail_cut = kDefaultTailCut);

/// n independent draws of sample_z(s, 0).
IntVec sample_dom(Eigen::Index n, double s, RandomStream& rng,
                  std::uint32_t tail_cut = kDefaultTailCut);

/// Randomized nearest-plane sampler over the lattice spanned by a basis T of
/// Lambda_q^perp(A), with the Gram-Schmidt factor and an A t = u solver
/// computed once up front.
class PreimageSampler {
 public:
  PreimageSampler(ZqMat a, IntMat basis, std::uint64_t q,
                  std::uint32_t tail_cut = kDefaultTailCut);

  const ZqMat& matrix() const { return a_; }
  const IntMat& basis() const { return basis_; }
  std::uint64_t modulus() const { return q_; }
  /// ||T~||, the largest Gram-Schmidt norm.
  double gram_schmidt_norm() const { return gs_max_; }
  const RealVec& gram_schmidt_norms() const { return gs_norms_; }

  /// Some t with A t = u (mod q); throws NoSolution.
  IntVec particular_solution(const ZqVec& u) const;

  /// x with A x = u (mod q), distributed close to D_{Lambda_q^u(A), s}.
  IntVec sample_pre(const ZqVec& u, double s, RandomStream& rng) const;

  /// x in Lambda_q^perp(A), distributed close to D_{Lambda_q^perp(A), s, c}.
  IntVec sample_gaussian(const RealVec& center, double s, RandomStream& rng) const;

  /// sample_pre for B = A H^T with basis H T, where H = diag(signs) and every
  /// sign is +1 or -1. Orthogonal H leaves R unchanged (H T = (H Q) R), and
  /// the coset point H t solves B (H t) = A t, so the walk over (B, H T)
  /// emits H times the walk over (A, T) on the same randomness.
  IntVec sample_pre_delegated(std::span<const std::int8_t> signs, const ZqVec& u, double s,
                              RandomStream& rng) const;

 private:
  // Integer coefficients z of the lattice vector T z sampled near `center`.
  IntVec nearest_plane(const RealVec& center_coords, double s, RandomStream& rng) const;
  IntVec lattice_point(const IntVec& coeffs) const;
  void check_width(double s) const;

  ZqMat a_;
  IntMat basis_;
  RealMat basis_real_;
  std::uint64_t q_;
  std::uint32_t tail_cut_;
  RealMat r_;  // upper-triangular Gram-Schmidt factor of the basis
  RealVec gs_norms_;
  double gs_max_ = 0.0;
  double basis_max_abs_ = 0.0;
  ZqSolver solver_;
  mutable std::atomic<bool> warned_{false};
};

}  // namespace shsig

#endif  // SHSIG_GAUSS_SAMPLER_HPP_
