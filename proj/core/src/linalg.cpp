#include "hyperdecay/linalg.hpp"

#include <cmath>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

double norm1(const CMatrix& A) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) best = std::max(best, A.col(j).cwiseAbs().sum());
    return best;
}

CMatrix expm(const CMatrix& A) {
    if (A.rows() != A.cols()) throw ContractViolation("expm needs a square matrix");
    const Eigen::Index n = A.rows();
    const double nrm = norm1(A);
    if (!std::isfinite(nrm)) throw NumericalError("expm: non-finite matrix");
    int s = 0;
    if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    const CMatrix B = A / std::ldexp(1.0, s);

    // Horner form of sum_{k<=18} B^k / k!; remainder < 0.5^19/19! relative
    constexpr int kDegree = 18;
    CMatrix E = CMatrix::Identity(n, n);
    for (int k = kDegree; k >= 1; --k) {
        E = CMatrix::Identity(n, n) + (B * E) / static_cast<double>(k);
    }
    for (int i = 0; i < s; ++i) E = E * E;
    return E;
}

}  // namespace hyperdecay
