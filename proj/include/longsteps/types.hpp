#pragma once

#include <Eigen/Core>

namespace longsteps {

template <class Real = double>
using VectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <class Real = double>
using MatrixX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

}  // namespace longsteps
