#ifndef SHSIG_ZQ_LINALG_HPP_
#define SHSIG_ZQ_LINALG_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "shsig/error.hpp"
#include "shsig/types.hpp"

namespace shsig {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Residue arithmetic (q prime unless stated otherwise)

inline std::uint64_t reduce_signed(std::int64_t v, std::uint64_t q) {
  const std::int64_t r = v % static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t q);

ZqMat reduce_mod(const IntMat& m, std::uint64_t q);
ZqVec reduce_mod(const IntVec& v, std::uint64_t q);

/// A * x (mod q) for an integer (possibly negative) right-hand side.
ZqVec mul_mod(const ZqMat& a, const IntVec& x, std::uint64_t q);
/// A * x (mod q) for a residue vector with entries in [0, q).
ZqVec mul_mod(const ZqMat& a, const ZqVec& x, std::uint64_t q);
ZqMat mul_mod(const ZqMat& a, const IntMat& x, std::uint64_t q);
ZqMat mul_mod(const ZqMat& a, const ZqMat& b, std::uint64_t q);

/// Rank over F_q by Gaussian elimination.
std::size_t rank_mod_q(const ZqMat& a, std::uint64_t q);
bool is_linearly_independent(std::span<const ZqVec> vectors, std::uint64_t q);

/// Precomputed reduced row echelon form of A, for repeated A t = u solves.
class ZqSolver {
 public:
  ZqSolver(const ZqMat& a, std::uint64_t q);

  std::size_t rank() const { return pivots_.size(); }
  const std::vector<Eigen::Index>& pivot_columns() const { return pivots_; }

  /// Some t in [0, q)^cols with A t = u (mod q), supported on the pivot
  /// columns; nullopt when u is outside the column space.
  std::optional<ZqVec> solve(const ZqVec& u) const;

 private:
  std::uint64_t q_;
  Eigen::Index cols_;
  std::vector<Eigen::Index> pivots_;
  // transform_ * A = RREF(A).
  ZqMat transform_;
};

/// Throws NoSolution when u is not in the column space of A.
ZqVec solve_particular(const ZqMat& a, const ZqVec& u, std::uint64_t q);

// ---------------------------------------------------------------------------
// Integer and real matrices

/// Max column l2 norm.
template <typename Derived>
double matrix_norm(const Eigen::MatrixBase<Derived>& b) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    long double sq = 0.0L;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      const auto v = static_cast<long double>(b(i, j));
      sq += v * v;
    }
    best = std::max(best, static_cast<double>(std::sqrt(sq)));
  }
  return best;
}

/// Column-wise Gram-Schmidt data: b~_i = b_i - sum_{j<i} mu_ij b~_j.
struct GramSchmidt {
  RealMat orthogonal;  // columns b~_i
  RealVec norms;       // ||b~_i||
  double max_norm = 0.0;
};

inline constexpr double kRankTolerance = 1e-9;

/// Upper-triangular R of a Householder QR; |R_ii| are the Gram-Schmidt norms.
/// Throws RankDeficient when some |R_ii| falls below 1e-9.
RealMat gram_schmidt_factor(const RealMat& b);

template <typename Derived>
GramSchmidt gram_schmidt(const Eigen::MatrixBase<Derived>& b) {
  const RealMat real = b.template cast<double>();
  Eigen::HouseholderQR<RealMat> qr(real);
  const RealMat r = qr.matrixQR().template triangularView<Eigen::Upper>();
  const Eigen::Index m = real.cols();
  if (real.rows() < m) {
    throw Error(ErrorCode::kRankDeficient, "more columns than rows");
  }
  GramSchmidt out;
  out.norms.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.norms(i) = std::abs(r(i, i));
    if (out.norms(i) < kRankTolerance) {
      throw Error(ErrorCode::kRankDeficient,
                  "column " + std::to_string(i) + " has vanishing orthogonal component");
    }
  }
  const RealMat q = qr.householderQ() * RealMat::Identity(real.rows(), m);
  out.orthogonal = q * r.topRows(m).diagonal().asDiagonal();
  out.max_norm = out.norms.maxCoeff();
  return out;
}

/// Only the norms ||b~_i||, without forming the orthogonal columns.
template <typename Derived>
RealVec gram_schmidt_norms(const Eigen::MatrixBase<Derived>& b) {
  return gram_schmidt_factor(b.template cast<double>()).diagonal().cwiseAbs();
}

#ifdef SHSIG_EXACT_GRAM_SCHMIDT
using BigRational = boost::multiprecision::cpp_rational;

/// Squared Gram-Schmidt norms ||b~_i||^2 in exact rationals. Cubic in the
/// dimension with growing operands; meant for small bases. Throws
/// RankDeficient.
std::vector<BigRational> exact_gram_schmidt_squared_norms(const IntMat& b);
#endif

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt exact_determinant(const IntMat& m);

/// Exact integer product. Uses binary64 when every partial sum is provably
/// below 2^53; otherwise 128-bit accumulation. Throws CoefficientOverflow if
/// an entry of the result does not fit in 64 bits.
IntMat exact_product(const IntMat& a, const IntMat& b);

}  // namespace shsig

#endif  // SHSIG_ZQ_LINALG_HPP_
