#pragma once

#include <Eigen/Dense>

namespace hyperdecay {

using CMatrix = Eigen::MatrixXcd;

// Scaling and squaring: A / 2^s has 1-norm <= 0.5, then a degree-18 Taylor
// polynomial, then s squarings.
CMatrix expm(const CMatrix& A);

double norm1(const CMatrix& A);

}  // namespace hyperdecay
