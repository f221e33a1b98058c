#pragma once

#include <span>
#include <string>
#include <vector>

#include "hyperdecay/clusters.hpp"
#include "hyperdecay/linalg.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

// y' = C y for y = (u, u', ..., u^(m-1)); eigenvalues are i tau_k.
CMatrix companion_matrix(std::span<const cplx> monic);

struct CompanionSystem {
    std::vector<double> xi;
    CMatrix C;
};
CompanionSystem companion_at(const OperatorSymbol& sym, std::span<const double> xi);

struct PropagatorValue {
    std::vector<double> xi;
    double t = 0.0;
    std::vector<cplx> E;                 // E_0 .. E_{m-1}
    std::vector<std::vector<cplx>> dtE;  // dtE[r][j] = d^r/dt^r E_j, r = 0..max_derivative
};

PropagatorValue propagator_at(const OperatorSymbol& sym, std::span<const double> xi, double t, int max_derivative = 0);

struct VandermondeCoeffs {
    std::vector<double> xi;
    std::vector<cplx> roots;
    CMatrix A;  // A(j, k): E_j = sum_k A(j,k) exp(i tau_k t)
    bool valid = false;
    double normalized_disc = 0.0;
    std::vector<double> decay_tag;  // max_k |A(j,k)| * |xi|^j, recorded for |xi| >= 1
};

// Lagrange form of the simple-root coefficients, including the (-i)^j
// factor that makes sum_k A(j,k) (i tau_k)^l = delta_lj.
VandermondeCoeffs vandermonde_at(const OperatorSymbol& sym, std::span<const double> xi, double threshold = 1e-6);

// E_j values at one xi. Uses the Vandermonde form when the roots are
// well separated and exp(tC) otherwise.
class MultiplierEvaluator {
public:
    MultiplierEvaluator(const OperatorSymbol& sym, std::span<const double> xi, double threshold = 1e-6,
                        bool allow_fast = true);

    bool fast() const { return fast_; }
    int order() const { return m_; }
    const std::vector<cplx>& roots() const { return roots_; }
    double min_im() const;

    // out[j] = d^r/dt^r E_j(t)
    void evaluate(double t, int r, std::span<cplx> out) const;

private:
    int m_ = 0;
    bool fast_ = false;
    std::vector<cplx> roots_;
    CMatrix A_;
    CMatrix C_;
    void ensure_rows(int r) const;
    mutable std::vector<Eigen::RowVectorXcd> cache_;
};

struct BoundCheck {
    int L = 1;
    int j = 0;
    double C_fit = 0.0;
    double growth_slope = 0.0;  // of the late-time envelope against log(1+t)
    bool pass = false;
    std::vector<double> worst_xi;
    double worst_t = 0.0;
    std::vector<double> times;
    std::vector<double> envelope;  // max over nodes of |E_j| / ((1+t)^(L-1) exp(-t minIm))
    std::string diagnostic;
};

BoundCheck multiplicity_bound_check(const OperatorSymbol& sym, std::span<const std::vector<double>> nodes, int L,
                                    int j, std::span<const double> t_samples);
// nodes within 8 grid spacings of the cluster core
BoundCheck multiplicity_bound_check(const OperatorSymbol& sym, const RootField& field,
                                    const MultiplicityCluster& cluster, int j, std::span<const double> t_samples);

}  // namespace hyperdecay
