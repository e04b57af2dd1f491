#include "shsig/zq_linalg.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace shsig {

namespace {

using RowMajorZq = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

// Whether row updates may skip the modular reduction: every entry absorbs at
// most `updates` products below q^2 before it is reduced again.
bool lazy_reduction_ok(std::uint64_t q, Index updates) {
  if (q > (std::uint64_t{1} << 32)) return false;
  const unsigned __int128 worst =
      static_cast<unsigned __int128>(q - 1) * (q - 1) * static_cast<unsigned __int128>(updates) + q;
  return worst < (static_cast<unsigned __int128>(1) << 64);
}

// Row echelon form over the first `pivot_cols` columns of `m`. With `reduced`
// set, entries above each pivot are cleared too (Gauss-Jordan). Entries are
// fully reduced mod q on return.
std::vector<Index> eliminate(RowMajorZq& m, Index pivot_cols, std::uint64_t q, bool reduced) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  const bool lazy = lazy_reduction_ok(q, std::min(rows, pivot_cols));
  std::vector<Index> pivots;
  std::vector<std::uint32_t> pivot_row32(lazy ? static_cast<std::size_t>(cols) : 0);

  Index r = 0;
  for (Index c = 0; c < pivot_cols && r < rows; ++c) {
    Index sel = -1;
    for (Index j = r; j < rows; ++j) {
      m(j, c) %= q;
      if (m(j, c) != 0) {
        sel = j;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != r) m.row(sel).swap(m.row(r));

    std::uint64_t* pivot = &m(r, 0);
    for (Index col = c; col < cols; ++col) pivot[col] %= q;
    const std::uint64_t inv = inverse_mod(pivot[c], q);
    for (Index col = c; col < cols; ++col) pivot[col] = mul_mod(pivot[col], inv, q);
    if (lazy) {
      for (Index col = c; col < cols; ++col) pivot_row32[col] = static_cast<std::uint32_t>(pivot[col]);
    }

    for (Index j = reduced ? 0 : r + 1; j < rows; ++j) {
      if (j == r) continue;
      std::uint64_t* dst = &m(j, 0);
      const std::uint64_t f = dst[c] % q;
      if (f == 0) {
        dst[c] = 0;
        continue;
      }
      const std::uint64_t g = q - f;
      if (lazy) {
        const std::uint32_t g32 = static_cast<std::uint32_t>(g);
        const std::uint32_t* src = pivot_row32.data();
        for (Index col = c; col < cols; ++col) {
          dst[col] += static_cast<std::uint64_t>(g32) * src[col];
        }
      } else {
        for (Index col = c; col < cols; ++col) {
          dst[col] = static_cast<std::uint64_t>(
              (static_cast<unsigned __int128>(g) * pivot[col] + dst[col] % q) % q);
        }
      }
    }
    pivots.push_back(c);
    ++r;
  }
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) %= q;
  }
  return pivots;
}

// Dot product of a residue row with a residue vector, both < q.
std::uint64_t dot_mod(const std::uint64_t* a, Index stride, const std::uint64_t* x, Index n,
                      std::uint64_t q) {
  if (lazy_reduction_ok(q, n)) {
    std::uint64_t acc = 0;
    for (Index i = 0; i < n; ++i) acc += a[i * stride] * x[i];
    return acc % q;
  }
  unsigned __int128 acc = 0;
  for (Index i = 0; i < n; ++i) {
    acc = (acc + static_cast<unsigned __int128>(a[i * stride]) * x[i]) % q;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t q) {
  __int128 t = 0, new_t = 1;
  __int128 r = q, new_r = a % q;
  while (new_r != 0) {
    const __int128 quotient = r / new_r;
    t -= quotient * new_t;
    std::swap(t, new_t);
    r -= quotient * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::to_string(a) + " is not invertible mod " + std::to_string(q));
  }
  if (t < 0) t += q;
  return static_cast<std::uint64_t>(t);
}

ZqMat reduce_mod(const IntMat& m, std::uint64_t q) {
  return m.unaryExpr([q](std::int64_t v) { return reduce_signed(v, q); });
}

ZqVec reduce_mod(const IntVec& v, std::uint64_t q) {
  return v.unaryExpr([q](std::int64_t x) { return reduce_signed(x, q); });
}

ZqMat mul_mod(const ZqMat& a, const ZqMat& b, std::uint64_t q) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kLengthMismatch, "inner dimensions differ");
  }
  ZqMat out(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out(i, j) = dot_mod(&a(i, 0), a.outerStride(), &b(0, j), a.cols(), q);
    }
  }
  return out;
}

ZqMat mul_mod(const ZqMat& a, const IntMat& x, std::uint64_t q) {
  return mul_mod(a, reduce_mod(x, q), q);
}

ZqVec mul_mod(const ZqMat& a, const IntVec& x, std::uint64_t q) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kLengthMismatch, "matrix has " + std::to_string(a.cols()) +
                                                " columns, vector has " +
                                                std::to_string(x.size()) + " entries");
  }
  return mul_mod(a, reduce_mod(x, q), q);
}

ZqVec mul_mod(const ZqMat& a, const ZqVec& x, std::uint64_t q) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kLengthMismatch, "matrix has " + std::to_string(a.cols()) +
                                                " columns, vector has " +
                                                std::to_string(x.size()) + " entries");
  }
  ZqVec out(a.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    out(i) = dot_mod(&a(i, 0), a.outerStride(), x.data(), a.cols(), q);
  }
  return out;
}

std::size_t rank_mod_q(const ZqMat& a, std::uint64_t q) {
  RowMajorZq m = (a.rows() <= a.cols()) ? RowMajorZq(a) : RowMajorZq(a.transpose());
  return eliminate(m, m.cols(), q, false).size();
}

bool is_linearly_independent(std::span<const ZqVec> vectors, std::uint64_t q) {
  if (vectors.empty()) return true;
  const Index dim = vectors.front().size();
  if (static_cast<Index>(vectors.size()) > dim) return false;
  ZqMat m(dim, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim) {
      throw Error(ErrorCode::kLengthMismatch, "vectors of different lengths");
    }
    m.col(static_cast<Index>(j)) = vectors[j].unaryExpr([q](std::uint64_t v) { return v % q; });
  }
  return rank_mod_q(m, q) == vectors.size();
}

ZqSolver::ZqSolver(const ZqMat& a, std::uint64_t q) : q_(q), cols_(a.cols()) {
  const Index rows = a.rows();
  RowMajorZq aug(rows, a.cols() + rows);
  aug.leftCols(a.cols()) = a.unaryExpr([q](std::uint64_t v) { return v % q; });
  aug.rightCols(rows).setIdentity();
  pivots_ = eliminate(aug, a.cols(), q, true);
  transform_ = aug.rightCols(rows);
}

std::optional<ZqVec> ZqSolver::solve(const ZqVec& u) const {
  if (u.size() != transform_.cols()) {
    throw Error(ErrorCode::kLengthMismatch, "right-hand side has wrong length");
  }
  const ZqVec ur = u.unaryExpr([this](std::uint64_t v) { return v % q_; });
  const ZqVec y = mul_mod(transform_, ur, q_);
  for (Index i = static_cast<Index>(pivots_.size()); i < y.size(); ++i) {
    if (y(i) != 0) return std::nullopt;
  }
  ZqVec t = ZqVec::Zero(cols_);
  for (std::size_t i = 0; i < pivots_.size(); ++i) t(pivots_[i]) = y(static_cast<Index>(i));
  return t;
}

ZqVec solve_particular(const ZqMat& a, const ZqVec& u, std::uint64_t q) {
  auto t = ZqSolver(a, q).solve(u);
  if (!t) throw Error(ErrorCode::kNoSolution, "target is outside the column space");
  return *std::move(t);
}

RealMat gram_schmidt_factor(const RealMat& b) {
  if (b.rows() < b.cols()) {
    throw Error(ErrorCode::kRankDeficient, "more columns than rows");
  }
  Eigen::HouseholderQR<RealMat> qr(b);
  RealMat r = qr.matrixQR().topRows(b.cols()).triangularView<Eigen::Upper>();
  for (Index i = 0; i < r.cols(); ++i) {
    if (std::abs(r(i, i)) < kRankTolerance) {
      throw Error(ErrorCode::kRankDeficient,
                  "column " + std::to_string(i) + " has vanishing orthogonal component");
    }
  }
  return r;
}

#ifdef SHSIG_EXACT_GRAM_SCHMIDT
std::vector<BigRational> exact_gram_schmidt_squared_norms(const IntMat& b) {
  const Index m = b.cols();
  if (b.rows() < m) throw Error(ErrorCode::kRankDeficient, "more columns than rows");
  std::vector<std::vector<BigRational>> ortho(static_cast<std::size_t>(m));
  std::vector<BigRational> norms(static_cast<std::size_t>(m));
  auto dot = [](const std::vector<BigRational>& x, const std::vector<BigRational>& y) {
    BigRational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  for (Index j = 0; j < m; ++j) {
    std::vector<BigRational> v(static_cast<std::size_t>(b.rows()));
    for (Index i = 0; i < b.rows(); ++i) v[static_cast<std::size_t>(i)] = BigRational(b(i, j));
    const std::vector<BigRational> col = v;
    for (Index t = 0; t < j; ++t) {
      const auto& u = ortho[static_cast<std::size_t>(t)];
      const BigRational mu = dot(col, u) / norms[static_cast<std::size_t>(t)];
      if (mu == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= mu * u[i];
    }
    BigRational sq = dot(v, v);
    if (sq == 0) {
      throw Error(ErrorCode::kRankDeficient,
                  "column " + std::to_string(j) + " has vanishing orthogonal component");
    }
    norms[static_cast<std::size_t>(j)] = sq;
    ortho[static_cast<std::size_t>(j)] = std::move(v);
  }
  return norms;
}
#endif

BigInt exact_determinant(const IntMat& input) {
  if (input.rows() != input.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "determinant of a non-square matrix");
  }
  const Index n = input.rows();
  if (n == 0) return 1;
  std::vector<BigInt> m(static_cast<std::size_t>(n * n));
  auto at = [&](Index i, Index j) -> BigInt& { return m[static_cast<std::size_t>(i * n + j)]; };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) at(i, j) = input(i, j);

  BigInt prev = 1;
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      Index swap_row = -1;
      for (Index i = k + 1; i < n; ++i) {
        if (at(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;
      for (Index j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

IntMat exact_product(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kLengthMismatch, "inner dimensions differ");
  }
  const auto max_abs = [](const IntMat& m) -> long double {
    long double best = 0;
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        best = std::max(best, std::abs(static_cast<long double>(m(i, j))));
    return best;
  };
  const long double bound = max_abs(a) * max_abs(b) * static_cast<long double>(a.cols());
  if (bound < 0x1.0p53L) {
    // Every product and partial sum is an integer of magnitude below 2^53,
    // so binary64 arithmetic is exact in any summation order.
    const RealMat p = a.cast<double>() * b.cast<double>();
    return p.cast<std::int64_t>();
  }
  if (bound >= 0x1.0p120L) {
    throw Error(ErrorCode::kCoefficientOverflow, "product may overflow 128-bit accumulation");
  }
  IntMat out(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      __int128 acc = 0;
      for (Index t = 0; t < a.cols(); ++t) {
        acc += static_cast<__int128>(a(i, t)) * b(t, j);
      }
      if (acc > std::numeric_limits<std::int64_t>::max() ||
          acc < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorCode::kCoefficientOverflow, "product entry exceeds 64 bits");
      }
      out(i, j) = static_cast<std::int64_t>(acc);
    }
  }
  return out;
}

}  // namespace shsig
