#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hyperdecay/linalg.hpp"
#include "hyperdecay/polyroots.hpp"
#include "hyperdecay/sparse_poly.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

// Moment system m_t + sum_j A_j m_{x_j} - i B m = 0 in the Hermite basis.
struct GradSystem {
    int n = 1;
    int N = 1;
    std::vector<MultiIndex> basis;    // graded order
    std::vector<Eigen::MatrixXd> A;   // n matrices, M x M
    Eigen::VectorXd B;                // diagonal, B_aa = |a|

    int size() const { return static_cast<int>(basis.size()); }
};

inline constexpr long grad_size_limit = 10000;

long grad_basis_size(int n, int N);
// throws SizeGuardError above grad_size_limit
GradSystem grad_system(int n, int N);

// X = i B - sum_j A_j xi_j, so P(tau, xi) = det(tau I - X)
CMatrix grad_matrix(const GradSystem& sys, std::span<const double> xi);
CMatrix grad_matrix(const GradSystem& sys, std::span<const cplx> xi);

// det(tau I - X) highest power first
std::vector<cplx> faddeev_leverrier(const CMatrix& X);
std::vector<cplx> grad_char_poly(const GradSystem& sys, std::span<const double> xi);

// Symbolic dispersion polynomial; coefficients are Gaussian integers.
OperatorSymbol grad_symbol(const GradSystem& sys);

// Characteristic polynomial path up to 16 moments, eigenvalues above.
RootSet grad_dispersion_roots(const GradSystem& sys, std::span<const double> xi);

}  // namespace hyperdecay
