#ifndef SHSIG_TYPES_HPP_
#define SHSIG_TYPES_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace shsig {

// Dense matrices templated on scalar. Residue matrices hold values in [0, q);
// the modulus travels alongside as an explicit argument.
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ZqMat = Mat<std::uint64_t>;
using ZqVec = Vec<std::uint64_t>;
using IntMat = Mat<std::int64_t>;
using IntVec = Vec<std::int64_t>;
using RealMat = Mat<double>;
using RealVec = Vec<double>;

// One entry per bit, each 0 or 1.
using BitVector = std::vector<std::uint8_t>;
using Bytes = std::vector<std::uint8_t>;

}  // namespace shsig

#endif  // SHSIG_TYPES_HPP_
