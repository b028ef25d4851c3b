#ifndef DPRLNS_LINALG_HPP_
#define DPRLNS_LINALG_HPP_

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace dprlns {

// Node-feature matrices are row-major: one row per node.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

}  // namespace dprlns

#endif  // DPRLNS_LINALG_HPP_
