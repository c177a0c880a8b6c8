// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <Eigen/Dense>

namespace mcradar {

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

} // namespace mcradar
