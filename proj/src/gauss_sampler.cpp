#include "shsig/gauss_sampler.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "shsig/diagnostics.hpp"
#include "shsig/error.hpp"

namespace shsig {

std::int64_t sample_z(double s, double c, RandomStream& rng, std::uint32_t tail_cut) {
  if (!(s > 0.0) || !std::isfinite(s) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidArgument, "sample_z needs finite s > 0 and finite c");
  }
  const double lo = std::ceil(c - tail_cut * s);
  const double hi = std::floor(c + tail_cut * s);
  if (hi < lo) {
    throw Error(ErrorCode::kSamplerStuck, "no integer inside the tail-cut window");
  }
  if (hi - lo >= 0x1.0p62) {
    throw Error(ErrorCode::kInvalidArgument, "sampling window exceeds 2^62");
  }
  const auto base = static_cast<std::int64_t>(lo);
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  for (int attempt = 0; attempt < kSamplerRetryCap; ++attempt) {
    const std::int64_t x = base + static_cast<std::int64_t>(rng.uniform_below(span));
    if (rng.uniform_unit() < gaussian_weight(static_cast<double>(x), s, c)) return x;
  }
  throw Error(ErrorCode::kSamplerStuck, "retry cap reached in sample_z");
}

IntVec sample_dom(Eigen::Index n, double s, RandomStream& rng, std::uint32_t tail_cut) {
  if (n > 1 && s < std::sqrt(std::log2(static_cast<double>(n)))) {
    std::ostringstream msg;
    msg << "sample_dom width " << s << " is below sqrt(log2 n) = "
        << std::sqrt(std::log2(static_cast<double>(n)));
    warn(msg.str());
  }
  IntVec x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = sample_z(s, 0.0, rng, tail_cut);
  return x;
}

PreimageSampler::PreimageSampler(ZqMat a, IntMat basis, std::uint64_t q, std::uint32_t tail_cut)
    : a_(std::move(a)),
      basis_(std::move(basis)),
      q_(q),
      tail_cut_(tail_cut),
      solver_(a_, q) {
  if (basis_.rows() != basis_.cols() || basis_.rows() != a_.cols()) {
    throw Error(ErrorCode::kInvalidBasis, "basis must be square with one row per column of A");
  }
  basis_real_ = basis_.cast<double>();
  basis_max_abs_ = basis_real_.cwiseAbs().maxCoeff();
  r_ = gram_schmidt_factor(basis_real_);
  gs_norms_ = r_.diagonal().cwiseAbs();
  gs_max_ = gs_norms_.maxCoeff();
}

void PreimageSampler::check_width(double s) const {
  const double n = static_cast<double>(basis_.cols());
  const double needed = gs_max_ * std::sqrt(std::log2(std::max(n, 2.0)));
  if (s < needed && !warned_.exchange(true)) {
    std::ostringstream msg;
    msg << "sampling width " << s << " is below ||T~|| * sqrt(log2 n) = " << needed;
    warn(msg.str());
  }
}

IntVec PreimageSampler::particular_solution(const ZqVec& u) const {
  auto t = solver_.solve(u);
  if (!t) throw Error(ErrorCode::kNoSolution, "syndrome outside the column space of A");
  return t->cast<std::int64_t>();
}

IntVec PreimageSampler::nearest_plane(const RealVec& center_coords, double s,
                                      RandomStream& rng) const {
  // center_coords = Q^T c; subtracting z_i b_i there is subtracting R(:, i).
  RealVec c = center_coords;
  const Eigen::Index n = r_.cols();
  IntVec z(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const double rii = r_(i, i);
    const double coeff = c(i) / rii;
    const std::int64_t zi = sample_z(s / std::abs(rii), coeff, rng, tail_cut_);
    z(i) = zi;
    if (zi != 0) c.head(i + 1) -= static_cast<double>(zi) * r_.col(i).head(i + 1);
  }
  return z;
}

IntVec PreimageSampler::lattice_point(const IntVec& coeffs) const {
  const double zmax = coeffs.size() ? static_cast<double>(coeffs.cwiseAbs().maxCoeff()) : 0.0;
  if (basis_max_abs_ * zmax * static_cast<double>(coeffs.size()) < 0x1.0p53) {
    const RealVec v = basis_real_ * coeffs.cast<double>();
    return v.cast<std::int64_t>();
  }
  return exact_product(basis_, IntMat(coeffs)).col(0);
}

IntVec PreimageSampler::sample_pre(const ZqVec& u, double s, RandomStream& rng) const {
  check_width(s);
  const IntVec t = particular_solution(u);
  // Q^T t = R^{-T} T^T t; t is supported on at most rank(A) coordinates.
  RealVec tt = RealVec::Zero(basis_.cols());
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    if (t(j) != 0) tt += static_cast<double>(t(j)) * basis_real_.row(j).transpose();
  }
  const RealVec coords = r_.transpose().triangularView<Eigen::Lower>().solve(tt);
  const IntVec z = nearest_plane(coords, s, rng);
  return t - lattice_point(z);
}

IntVec PreimageSampler::sample_gaussian(const RealVec& center, double s, RandomStream& rng) const {
  if (center.size() != basis_.rows()) {
    throw Error(ErrorCode::kLengthMismatch, "center has wrong dimension");
  }
  check_width(s);
  const RealVec tt = basis_real_.transpose() * center;
  const RealVec coords = r_.transpose().triangularView<Eigen::Lower>().solve(tt);
  return lattice_point(nearest_plane(coords, s, rng));
}

IntVec PreimageSampler::sample_pre_delegated(std::span<const std::int8_t> signs, const ZqVec& u,
                                             double s, RandomStream& rng) const {
  if (static_cast<Eigen::Index>(signs.size()) != basis_.rows()) {
    throw Error(ErrorCode::kLengthMismatch, "sign vector has wrong length");
  }
  IntVec x = sample_pre(u, s, rng);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (signs[static_cast<std::size_t>(i)] < 0) x(i) = -x(i);
  }
  return x;
}

}  // namespace shsig
