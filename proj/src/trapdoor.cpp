#include "shsig/trapdoor.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "shsig/error.hpp"

namespace shsig {

namespace {

using Index = Eigen::Index;

int gadget_length(std::uint64_t q) { return static_cast<int>(std::bit_width(q - 1)); }

IntMat block_diagonal(const IntMat& block, Index copies) {
  const Index b = block.rows();
  IntMat out = IntMat::Zero(b * copies, b * copies);
  for (Index i = 0; i < copies; ++i) out.block(i * b, i * b, b, b) = block;
  return out;
}

bool is_diagonal(const IntMat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

}  // namespace

IntMat gadget_basis(std::uint64_t q) {
  if (q < 3) throw Error(ErrorCode::kInvalidModulus, "gadget basis needs q >= 3");
  const int l = gadget_length(q);
  IntMat s = IntMat::Zero(l, l);
  for (int j = 0; j + 1 < l; ++j) {
    s(j, j) = 2;
    s(j + 1, j) = -1;
  }
  for (int i = 0; i < l; ++i) s(i, l - 1) = static_cast<std::int64_t>((q >> i) & 1);
  return s;
}

TrapdoorPair trap_gen(std::uint64_t q, std::uint64_t h, std::uint64_t n, RandomStream& rng) {
  const Index l = gadget_length(q);
  const Index hl = static_cast<Index>(h) * l;
  if (h == 0 || static_cast<Index>(n) <= hl) {
    throw Error(ErrorCode::kGenerationFailed,
                "n = " + std::to_string(n) + " leaves no room beside the gadget block of width " +
                    std::to_string(hl));
  }
  const Index m_bar = static_cast<Index>(n) - hl;
  const auto qi = static_cast<std::int64_t>(q);

  const IntMat s_g = gadget_basis(q);
  // q * S_g^{-1} is integral because det S_g = q; round and confirm exactly.
  const RealMat inv = s_g.cast<double>().inverse();
  const IntMat p_g = (inv * static_cast<double>(q)).array().round().cast<std::int64_t>().matrix();
  if (exact_product(s_g, p_g) != IntMat::Identity(l, l) * qi) {
    throw Error(ErrorCode::kGenerationFailed, "gadget basis inverse is not integral");
  }
  const IntMat s = block_diagonal(s_g, static_cast<Index>(h));
  const IntMat p = block_diagonal(p_g, static_cast<Index>(h));

  for (int attempt = 0; attempt < kTrapGenRetries; ++attempt) {
    ZqMat a_bar(static_cast<Index>(h), m_bar);
    for (Index j = 0; j < m_bar; ++j)
      for (Index i = 0; i < a_bar.rows(); ++i) a_bar(i, j) = rng.uniform_below(q);

    // R has entries -1, 0, 1 with probabilities 1/4, 1/2, 1/4.
    IntMat r(m_bar, hl);
    for (Index j = 0; j < hl; ++j) {
      for (Index i = 0; i < m_bar; ++i) {
        const std::uint64_t bits = rng.next_u64();
        r(i, j) = static_cast<std::int64_t>(bits & 1) - static_cast<std::int64_t>((bits >> 1) & 1);
      }
    }

    // G W = -A_bar (mod q): column j of W holds the binary digits of -A_bar(:, j).
    IntMat w = IntMat::Zero(hl, m_bar);
    for (Index j = 0; j < m_bar; ++j) {
      for (Index i = 0; i < a_bar.rows(); ++i) {
        const std::uint64_t v = (q - a_bar(i, j)) % q;
        for (Index b = 0; b < l; ++b) w(i * l + b, j) = static_cast<std::int64_t>((v >> b) & 1);
      }
    }

    ZqMat a(static_cast<Index>(h), static_cast<Index>(n));
    a.leftCols(m_bar) = a_bar;
    const ZqMat a_bar_r = mul_mod(a_bar, r, q);
    for (Index j = 0; j < hl; ++j) {
      for (Index i = 0; i < a.rows(); ++i) {
        const std::uint64_t g = (j / l == i) ? (std::uint64_t{1} << (j % l)) % q : 0;
        a(i, m_bar + j) = (g + q - a_bar_r(i, j)) % q;
      }
    }
    if (rank_mod_q(a, q) != h) continue;

    // T = [[I, R], [0, I]] * [[0, I], [S, W]]; gadget columns first so the
    // Gram-Schmidt norms stay within (s1(R) + 1) * ||S~||.
    TrapdoorPair out;
    out.a = std::move(a);
    out.basis.resize(static_cast<Index>(n), static_cast<Index>(n));
    out.basis.topLeftCorner(m_bar, hl) = exact_product(r, s);
    out.basis.topRightCorner(m_bar, m_bar) = exact_product(r, w) + IntMat::Identity(m_bar, m_bar);
    out.basis.bottomLeftCorner(hl, hl) = s;
    out.basis.bottomRightCorner(hl, m_bar) = w;

    // q T^{-1} = [[-P W, P (W R + I)], [q I, -q R]] with P = q S^{-1}.
    out.scaled_inverse.resize(static_cast<Index>(n), static_cast<Index>(n));
    out.scaled_inverse.topLeftCorner(hl, m_bar) = -exact_product(p, w);
    out.scaled_inverse.topRightCorner(hl, hl) =
        exact_product(p, exact_product(w, r) + IntMat::Identity(hl, hl));
    out.scaled_inverse.bottomLeftCorner(m_bar, m_bar) = IntMat::Identity(m_bar, m_bar) * qi;
    out.scaled_inverse.bottomRightCorner(m_bar, hl) = -r * qi;
    return out;
  }
  throw Error(ErrorCode::kGenerationFailed,
              "A was rank deficient after " + std::to_string(kTrapGenRetries) + " attempts");
}

TrapdoorPair trap_gen(const Params& params, RandomStream& rng) {
  return trap_gen(params.q, params.h, params.n, rng);
}

double trapdoor_quality(const Params& params, double gram_schmidt_norm) {
  return gram_schmidt_norm /
         std::sqrt(static_cast<double>(params.h) * std::log2(static_cast<double>(params.q)));
}

BasisCheck check_basis(const ZqMat& a, const IntMat& basis, const IntMat& scaled_inverse,
                       std::uint64_t q) {
  const Index n = basis.rows();
  if (basis.cols() != n || a.cols() != n || scaled_inverse.rows() != n ||
      scaled_inverse.cols() != n) {
    throw Error(ErrorCode::kLengthMismatch, "basis check dimensions disagree");
  }
  BasisCheck check;
  check.in_kernel = mul_mod(a, basis, q).isZero();
  check.inverse_certified =
      exact_product(basis, scaled_inverse) == IntMat::Identity(n, n) * static_cast<std::int64_t>(q);
  check.rank_a = rank_mod_q(a, q);
  check.rank_t_mod_q = rank_mod_q(reduce_mod(basis, q), q);
  check.det_exponent = static_cast<std::size_t>(n) - check.rank_t_mod_q;
  return check;
}

std::vector<std::int8_t> tag_signs(const BitVector& tau) {
  std::vector<std::int8_t> signs(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] > 1) throw Error(ErrorCode::kInvalidArgument, "tag entries must be bits");
    signs[i] = tau[i] ? 1 : -1;
  }
  return signs;
}

IntMat tag_matrix(const BitVector& tau, std::size_t n) {
  if (tau.size() != n) {
    throw Error(ErrorCode::kLengthMismatch,
                "tag has " + std::to_string(tau.size()) + " bits, expected " + std::to_string(n));
  }
  const auto signs = tag_signs(tau);
  IntMat h = IntMat::Zero(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) h(static_cast<Index>(i), static_cast<Index>(i)) = signs[i];
  return h;
}

ZqMat delegate_matrix(const ZqMat& a, const IntMat& h, std::uint64_t q) {
  if (h.rows() != a.cols() || h.cols() != a.cols()) {
    throw Error(ErrorCode::kLengthMismatch, "H must be n x n");
  }
  if (is_diagonal(h)) {
    ZqMat b = a;
    for (Index j = 0; j < a.cols(); ++j) {
      const std::uint64_t d = reduce_signed(h(j, j), q);
      for (Index i = 0; i < a.rows(); ++i) b(i, j) = mul_mod(a(i, j), d, q);
    }
    return b;
  }
  return mul_mod(a, IntMat(h.transpose()), q);
}

IntMat new_basis(const ZqMat& a, const IntMat& h, const IntMat& t_a, std::uint64_t q) {
  const Index n = a.cols();
  if (h.rows() != n || h.cols() != n || t_a.rows() != n || t_a.cols() != n) {
    throw Error(ErrorCode::kLengthMismatch, "H and T_A must be n x n");
  }
  const bool diagonal = is_diagonal(h);
  if (diagonal) {
    for (Index i = 0; i < n; ++i) {
      if (h(i, i) != 1 && h(i, i) != -1) {
        throw Error(ErrorCode::kNotOrthogonal, "diagonal H must have +-1 entries");
      }
    }
  } else if (exact_product(h, IntMat(h.transpose())) != IntMat::Identity(n, n)) {
    throw Error(ErrorCode::kNotOrthogonal, "H H^T != I");
  }
  if (!mul_mod(a, t_a, q).isZero()) {
    throw Error(ErrorCode::kInvalidBasis, "T_A has a column outside Lambda_q^perp(A)");
  }
  if (diagonal) return h.diagonal().asDiagonal() * t_a;
  return exact_product(h, t_a);
}

}  // namespace shsig
