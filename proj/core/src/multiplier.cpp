#include "hyperdecay/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "hyperdecay/error.hpp"
#include "hyperdecay/polyroots.hpp"
#include "hyperdecay/roots.hpp"

namespace hyperdecay {

namespace {

const cplx I(0.0, 1.0);

cplx ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return 1.0;
        case 1: return I;
        case 2: return -1.0;
        default: return -I;
    }
}

[[noreturn]] void throw_unstable(const OperatorSymbol& sym, std::span<const double> xi, double t) {
    auto rs = roots_at(tau_poly_at(sym, xi), xi);
    int worst = 0;
    for (int k = 1; k < sym.order(); ++k)
        if (rs.roots[static_cast<std::size_t>(k)].imag() < rs.roots[static_cast<std::size_t>(worst)].imag()) worst = k;
    double im = rs.roots[static_cast<std::size_t>(worst)].imag();
    throw UnstableModeError("propagator overflow at t = " + std::to_string(t) + ": branch " + std::to_string(worst) +
                                " has Im tau = " + std::to_string(im),
                            worst, im);
}

bool finite(const CMatrix& M) { return M.allFinite() && M.cwiseAbs().maxCoeff() < 1e250; }

}  // namespace

CMatrix companion_matrix(std::span<const cplx> monic) {
    const int m = static_cast<int>(monic.size()) - 1;
    if (m < 1 || monic[0] != cplx(1.0)) throw ContractViolation("companion matrix needs a monic polynomial");
    CMatrix C = CMatrix::Zero(m, m);
    for (int r = 0; r + 1 < m; ++r) C(r, r + 1) = 1.0;
    // D_t = -i d/dt turns p_j D_t^(m-j) into u^(m) = -sum_j i^j p_j u^(m-j)
    for (int j = 1; j <= m; ++j) C(m - 1, m - j) = -ipow(j) * monic[static_cast<std::size_t>(j)];
    return C;
}

CompanionSystem companion_at(const OperatorSymbol& sym, std::span<const double> xi) {
    return {std::vector<double>(xi.begin(), xi.end()), companion_matrix(tau_poly_at(sym, xi))};
}

PropagatorValue propagator_at(const OperatorSymbol& sym, std::span<const double> xi, double t, int max_derivative) {
    if (!(t >= 0.0)) throw ContractViolation("propagator_at needs t >= 0");
    if (max_derivative < 0) throw ContractViolation("derivative order must be >= 0");
    const int m = sym.order();
    CMatrix C = companion_matrix(tau_poly_at(sym, xi));
    CMatrix Et = expm(t * C);
    if (!finite(Et)) throw_unstable(sym, xi, t);
    PropagatorValue v;
    v.xi.assign(xi.begin(), xi.end());
    v.t = t;
    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(m);
    row(0) = 1.0;
    for (int r = 0; r <= max_derivative; ++r) {
        Eigen::RowVectorXcd vals = row * Et;
        v.dtE.emplace_back(vals.data(), vals.data() + m);
        row = row * C;
    }
    v.E = v.dtE[0];
    return v;
}

VandermondeCoeffs vandermonde_at(const OperatorSymbol& sym, std::span<const double> xi, double threshold) {
    const int m = sym.order();
    VandermondeCoeffs vc;
    vc.xi.assign(xi.begin(), xi.end());
    auto c = tau_poly_at(sym, xi);
    vc.roots = roots_at(c, xi).roots;
    vc.A = CMatrix::Zero(m, m);
    if (m == 1) {
        vc.A(0, 0) = 1.0;
        vc.valid = true;
        vc.normalized_disc = 1.0;
        return vc;
    }
    vc.normalized_disc = std::abs(discriminant_of(c)) / discriminant_scale(m, xi);
    vc.valid = vc.normalized_disc >= threshold;
    if (!vc.valid) return vc;

    std::vector<cplx> others(static_cast<std::size_t>(m - 1));
    for (int k = 0; k < m; ++k) {
        std::size_t o = 0;
        cplx denom = 1.0;
        for (int l = 0; l < m; ++l) {
            if (l == k) continue;
            others[o++] = vc.roots[static_cast<std::size_t>(l)];
            denom *= vc.roots[static_cast<std::size_t>(k)] - vc.roots[static_cast<std::size_t>(l)];
        }
        auto lag = poly_from_roots(others);  // highest power first, length m
        for (int j = 0; j < m; ++j) vc.A(j, k) = ipow(-j) * lag[static_cast<std::size_t>(m - 1 - j)] / denom;
    }
    const double r = euclidean_norm(xi);
    if (r >= 1.0) {
        for (int j = 0; j < m; ++j) {
            double mx = 0.0;
            for (int k = 0; k < m; ++k) mx = std::max(mx, std::abs(vc.A(j, k)));
            vc.decay_tag.push_back(mx * std::pow(r, j));
        }
    }
    return vc;
}

MultiplierEvaluator::MultiplierEvaluator(const OperatorSymbol& sym, std::span<const double> xi, double threshold,
                                         bool allow_fast)
    : m_(sym.order()) {
    auto c = tau_poly_at(sym, xi);
    C_ = companion_matrix(c);
    if (allow_fast) {
        VandermondeCoeffs vc = vandermonde_at(sym, xi, threshold);
        roots_ = vc.roots;
        if (vc.valid) {
            fast_ = true;
            A_ = vc.A;
        }
    } else {
        roots_ = roots_at(c, xi).roots;
    }
}

double MultiplierEvaluator::min_im() const {
    double v = std::numeric_limits<double>::infinity();
    for (cplx r : roots_) v = std::min(v, r.imag());
    return v;
}

void MultiplierEvaluator::ensure_rows(int r) const {
    if (cache_.empty()) {
        Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(m_);
        row(0) = 1.0;
        cache_.push_back(row);
    }
    while (static_cast<int>(cache_.size()) <= r) cache_.push_back(cache_.back() * C_);
}

void MultiplierEvaluator::evaluate(double t, int r, std::span<cplx> out) const {
    if (static_cast<int>(out.size()) != m_) throw ContractViolation("output size must equal the order");
    if (fast_) {
        for (int j = 0; j < m_; ++j) out[static_cast<std::size_t>(j)] = 0.0;
        for (int k = 0; k < m_; ++k) {
            cplx lam = I * roots_[static_cast<std::size_t>(k)];
            cplx w = std::exp(lam * t);
            for (int q = 0; q < r; ++q) w *= lam;
            for (int j = 0; j < m_; ++j) out[static_cast<std::size_t>(j)] += A_(j, k) * w;
        }
        return;
    }
    CMatrix Et = expm(t * C_);
    if (!finite(Et)) {
        int worst = 0;
        for (int k = 1; k < m_; ++k)
            if (roots_[static_cast<std::size_t>(k)].imag() < roots_[static_cast<std::size_t>(worst)].imag()) worst = k;
        throw UnstableModeError("propagator overflow", worst, roots_[static_cast<std::size_t>(worst)].imag());
    }
    ensure_rows(r);
    Eigen::RowVectorXcd v = cache_[static_cast<std::size_t>(r)] * Et;
    for (int j = 0; j < m_; ++j) out[static_cast<std::size_t>(j)] = v(j);
}

BoundCheck multiplicity_bound_check(const OperatorSymbol& sym, std::span<const std::vector<double>> nodes, int L,
                                    int j, std::span<const double> t_samples) {
    const int m = sym.order();
    if (L < 1) throw ContractViolation("L must be >= 1");
    if (j < 0 || j >= m) throw ContractViolation("datum index out of range");
    if (nodes.empty() || t_samples.size() < 4) throw ContractViolation("bound check needs nodes and >= 4 times");
    std::vector<double> ts(t_samples.begin(), t_samples.end());
    if (!std::is_sorted(ts.begin(), ts.end()) || ts.front() < 0) throw ContractViolation("times must be sorted, >= 0");

    BoundCheck bc;
    bc.L = L;
    bc.j = j;
    bc.times = ts;
    bc.envelope.assign(ts.size(), 0.0);

    for (const auto& xi : nodes) {
        auto c = tau_poly_at(sym, xi);
        auto roots = roots_at(c, xi).roots;
        double mi = std::numeric_limits<double>::infinity();
        for (cplx r : roots) mi = std::min(mi, r.imag());
        CMatrix C = companion_matrix(c);
        // sweep: reuse exp(dt C) for equal steps
        std::map<double, CMatrix> steps;
        CMatrix Et = expm(ts[0] * C);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i > 0) {
                double dt = ts[i] - ts[i - 1];
                auto it = steps.find(dt);
                if (it == steps.end()) it = steps.emplace(dt, expm(dt * C)).first;
                Et = it->second * Et;
            }
            const double t = ts[i];
            double e = std::abs(Et(0, j));
            double denom = std::pow(1.0 + t, L - 1) * std::exp(-t * mi);
            double ratio = e / denom;
            if (!std::isfinite(ratio)) {
                bc.pass = false;
                bc.C_fit = std::numeric_limits<double>::infinity();
                bc.worst_xi = xi;
                bc.worst_t = t;
                bc.diagnostic = "non-finite ratio";
                return bc;
            }
            if (ratio > bc.envelope[i]) bc.envelope[i] = ratio;
            if (ratio > bc.C_fit) {
                bc.C_fit = ratio;
                bc.worst_xi = xi;
                bc.worst_t = t;
            }
        }
    }

    // growth of the envelope on the second half of the window
    std::vector<double> lx, ly;
    const double tmax = ts.back();
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i] >= 0.5 * tmax && bc.envelope[i] > 0) {
            lx.push_back(std::log1p(ts[i]));
            ly.push_back(std::log(bc.envelope[i]));
        }
    if (lx.size() >= 2) {
        double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
        double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        bc.growth_slope = sxx > 0 ? sxy / sxx : 0.0;
    }
    bc.pass = std::isfinite(bc.C_fit) && bc.growth_slope <= 0.25;
    if (!bc.pass) bc.diagnostic = "envelope grows like (1+t)^" + std::to_string(bc.growth_slope) + " beyond the bound";
    return bc;
}

BoundCheck multiplicity_bound_check(const OperatorSymbol& sym, const RootField& field,
                                    const MultiplicityCluster& cluster, int j, std::span<const double> t_samples) {
    const auto& g = field.grid;
    const double eps = 8.0 * g.spacing();
    std::vector<std::vector<double>> core;
    for (std::size_t i : cluster.core) core.push_back(g.node(i));
    std::vector<std::vector<double>> nodes;
    std::vector<double> xi(static_cast<std::size_t>(g.dim()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.node(i, xi);
        for (const auto& p : core) {
            double d2 = 0;
            for (std::size_t k = 0; k < xi.size(); ++k) d2 += (xi[k] - p[k]) * (xi[k] - p[k]);
            if (d2 <= eps * eps) {
                nodes.push_back(xi);
                break;
            }
        }
    }
    return multiplicity_bound_check(sym, nodes, cluster.L, j, t_samples);
}

}  // namespace hyperdecay
