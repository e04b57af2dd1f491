#ifndef SHSIG_TRAPDOOR_HPP_
#define SHSIG_TRAPDOOR_HPP_

#include <cstdint>
#include <vector>

#include "shsig/params.hpp"
#include "shsig/random.hpp"
#include "shsig/types.hpp"
#include "shsig/zq_linalg.hpp"

namespace shsig {

/// Output of trap_gen. `scaled_inverse` is q * basis^{-1}, an integer matrix
/// that certifies the basis property without a big-integer determinant (see
/// check_basis).
struct TrapdoorPair {
  ZqMat a;               // h x n, close to uniform
  IntMat basis;          // n x n, columns span Lambda_q^perp(a)
  IntMat scaled_inverse; // q * basis^{-1}
};

inline constexpr int kTrapGenRetries = 16;

/// Gadget-style generator: A = [A_bar | G - A_bar R] with a short basis of
/// Lambda_q^perp(A) assembled from R and the basis of Lambda_q^perp(g^T).
TrapdoorPair trap_gen(std::uint64_t q, std::uint64_t h, std::uint64_t n, RandomStream& rng);
TrapdoorPair trap_gen(const Params& params, RandomStream& rng);

/// Short basis of Lambda_q^perp(g^T) for g = (1, 2, ..., 2^{l-1}),
/// l = ceil(log2 q). Its determinant is q.
IntMat gadget_basis(std::uint64_t q);

/// ||T~|| / sqrt(h log2 q), the constant achieved by a generated basis.
double trapdoor_quality(const Params& params, double gram_schmidt_norm);

/// Exact verdict on "T is a basis of Lambda_q^perp(A)".
///
/// With A T = 0 (mod q) and T Q = q I for an integer Q, every Smith invariant
/// of T divides q, so |det T| = q^(n - rank_q T). T is a basis iff that
/// exponent equals rank_q A, the index exponent of Lambda_q^perp(A) in Z^n.
struct BasisCheck {
  bool in_kernel = false;        // A T = 0 (mod q)
  bool inverse_certified = false;// T Q = q I exactly
  std::size_t rank_a = 0;
  std::size_t rank_t_mod_q = 0;
  std::size_t det_exponent = 0;  // |det T| = q^det_exponent when certified

  bool is_basis() const {
    return in_kernel && inverse_certified && det_exponent == rank_a;
  }
};

BasisCheck check_basis(const ZqMat& a, const IntMat& basis, const IntMat& scaled_inverse,
                       std::uint64_t q);

/// H_tau = diag(2 tau_i - 1). Throws LengthMismatch unless |tau| = n.
IntMat tag_matrix(const BitVector& tau, std::size_t n);
/// Diagonal of H_tau as +-1 entries.
std::vector<std::int8_t> tag_signs(const BitVector& tau);

/// B = A H^T (mod q).
ZqMat delegate_matrix(const ZqMat& a, const IntMat& h, std::uint64_t q);

/// T_B = H T_A, a basis of Lambda_q^perp(A H^T) for orthogonal H.
/// Throws NotOrthogonal or InvalidBasis.
IntMat new_basis(const ZqMat& a, const IntMat& h, const IntMat& t_a, std::uint64_t q);

}  // namespace shsig

#endif  // SHSIG_TRAPDOOR_HPP_
