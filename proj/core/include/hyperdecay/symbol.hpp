#pragma once

#include <span>
#include <string>
#include <vector>

#include "hyperdecay/sparse_poly.hpp"

namespace hyperdecay {

// P(tau, xi) = tau^m + sum_j p_j(xi) tau^(m-j), p_j of degree <= j.
class OperatorSymbol {
public:
    OperatorSymbol() = default;
    // tau_coeffs[j-1] = p_j. Lower-order terms are simply part of p_j.
    OperatorSymbol(int n, std::vector<SparsePoly> tau_coeffs);

    int dim() const { return n_; }
    int order() const { return m_; }

    // 1-based: coeff(j) multiplies tau^(m-j)
    const SparsePoly& coeff(int j) const;
    const SparsePoly& principal(int j) const;
    const std::vector<SparsePoly>& tau_coeffs() const { return coeffs_; }
    const std::vector<SparsePoly>& principal_coeffs() const { return principal_; }

    bool operator==(const OperatorSymbol& o) const;

    std::string to_string() const;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<SparsePoly> coeffs_;
    std::vector<SparsePoly> principal_;
};

cplx eval_symbol(const OperatorSymbol& sym, cplx tau, std::span<const double> xi);

// [1, p_1(xi), ..., p_m(xi)]
std::vector<cplx> tau_poly_at(const OperatorSymbol& sym, std::span<const double> xi);
std::vector<cplx> principal_poly_at(const OperatorSymbol& sym, std::span<const double> xi);

// Horner in tau, coefficients highest power first.
cplx horner(std::span<const cplx> coeffs, cplx z);

struct HyperbolicityCheck {
    bool strictly_hyperbolic = true;
    double min_gap = 0.0;
    double max_abs_imag = 0.0;
    std::vector<double> worst_direction;
};

int default_num_directions(int n);
// Deterministic unit directions: both signs in 1D, equispaced circle in 2D,
// Fibonacci sphere in 3D, normalized Halton-like points beyond.
std::vector<std::vector<double>> unit_directions(int n, int count);

HyperbolicityCheck check_strict_hyperbolicity(const OperatorSymbol& sym, int num_directions = 0,
                                              double tol = 1e-9);

double japanese_bracket(std::span<const double> xi);
double euclidean_norm(std::span<const double> xi);

}  // namespace hyperdecay
