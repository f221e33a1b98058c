#pragma once

#include <span>
#include <vector>

#include "hyperdecay/sparse_poly.hpp"

namespace hyperdecay {

struct RootSet {
    std::vector<double> xi;
    std::vector<cplx> roots;
    std::vector<double> residuals;
    int iterations = 0;

    double worst_residual() const;
};

struct RootOptions {
    int max_iterations = 800;
};

// Aberth-Ehrlich on a monic polynomial (highest power first), then one
// Newton step per root.
RootSet roots_at(std::span<const cplx> monic, std::span<const double> xi = {}, const RootOptions& opt = {});

// Expand prod (z - r_k) into monic coefficients, highest power first.
std::vector<cplx> poly_from_roots(std::span<const cplx> roots);

}  // namespace hyperdecay
