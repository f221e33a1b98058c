#include "hyperdecay/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hyperdecay/error.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
    cplx p, dp;
    double bound;  // sum |a_k| |z|^k, rounding scale of p
};

Eval eval_with_derivative(std::span<const cplx> a, cplx z) {
    cplx p = a[0], dp = 0.0;
    double az = std::abs(z);
    double bound = std::abs(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        dp = dp * z + p;
        p = p * z + a[k];
        bound = bound * az + std::abs(a[k]);
    }
    return {p, dp, bound};
}

double start_radius(std::span<const cplx> a) {
    const std::size_t m = a.size() - 1;
    // Gershgorin discs of the companion matrix: |z| <= max(1, sum |a_k|)
    double gersh = 0.0;
    for (std::size_t k = 1; k <= m; ++k) gersh += std::abs(a[k]);
    gersh = std::max(1.0, gersh);
    // Fujiwara bound, usually much tighter
    double fuji = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        double v = std::abs(a[k]);
        if (k == m) v *= 0.5;
        if (v > 0) fuji = std::max(fuji, std::pow(v, 1.0 / static_cast<double>(k)));
    }
    fuji *= 2.0;
    double r = std::min(gersh, fuji);
    return r > 0 ? r : 1.0;
}

}  // namespace

double RootSet::worst_residual() const {
    double w = 0.0;
    for (double r : residuals) w = std::max(w, r);
    return w;
}

RootSet roots_at(std::span<const cplx> monic, std::span<const double> xi, const RootOptions& opt) {
    if (monic.size() < 2) throw ContractViolation("roots_at needs degree >= 1");
    if (monic[0] != cplx(1.0)) throw ContractViolation("roots_at needs a monic polynomial (leading coefficient 1)");
    for (cplx c : monic)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ContractViolation("roots_at: non-finite coefficient");

    const std::size_t m = monic.size() - 1;
    RootSet out;
    out.xi.assign(xi.begin(), xi.end());
    out.roots.resize(m);
    out.residuals.resize(m);

    if (m == 1) {
        out.roots[0] = -monic[1];
        out.residuals[0] = std::abs(horner(monic, out.roots[0]));
        return out;
    }

    // Zero trailing coefficients give exact zero roots; deflate them.
    std::size_t zeros = 0;
    while (zeros < m && monic[m - zeros] == cplx(0.0)) ++zeros;
    std::span<const cplx> a = monic.subspan(0, monic.size() - zeros);
    const std::size_t md = m - zeros;

    std::vector<cplx> z(md);
    if (md == 1) {
        z[0] = -a[1];
    } else if (md > 1) {
        cplx centre = -a[1] / static_cast<double>(md);
        double r = start_radius(a);
        const double pi = std::numbers::pi;
        for (std::size_t k = 0; k < md; ++k) {
            double ang = 2.0 * pi * static_cast<double>(k) / static_cast<double>(md) + 0.4;
            z[k] = centre + r * cplx(std::cos(ang), std::sin(ang));
        }

        std::vector<char> done(md, 0);
        int it = 0;
        for (; it < opt.max_iterations; ++it) {
            bool all = true;
            for (std::size_t k = 0; k < md; ++k) {
                if (done[k]) continue;
                Eval e = eval_with_derivative(a, z[k]);
                if (std::abs(e.p) <= 4.0 * static_cast<double>(md) * kEps * e.bound) {
                    done[k] = 1;
                    continue;
                }
                all = false;
                cplx ratio = e.p / e.dp;
                cplx s = 0.0;
                for (std::size_t j = 0; j < md; ++j)
                    if (j != k) s += 1.0 / (z[k] - z[j]);
                cplx corr = ratio / (1.0 - ratio * s);
                if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = ratio;
                if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag()))
                    corr = cplx(1e-3, 1e-3) * (1.0 + std::abs(z[k]));
                z[k] -= corr;
                if (std::abs(corr) <= 2.0 * kEps * std::abs(z[k])) done[k] = 1;
            }
            if (all) break;
        }
        out.iterations = it;

        double worst = 0.0;
        bool failed = false;
        for (std::size_t k = 0; k < md; ++k) {
            Eval e = eval_with_derivative(a, z[k]);
            double rel = std::abs(e.p) / std::max(e.bound, std::numeric_limits<double>::min());
            worst = std::max(worst, std::abs(e.p));
            if (rel > 1e-6) failed = true;
        }
        if (failed)
            throw ConvergenceError("Aberth iteration did not converge (worst residual " + std::to_string(worst) + ")",
                                   worst);

        for (std::size_t k = 0; k < md; ++k) {
            Eval e = eval_with_derivative(a, z[k]);
            if (e.dp == cplx(0.0)) continue;
            cplx cand = z[k] - e.p / e.dp;
            if (std::abs(horner(a, cand)) < std::abs(e.p)) z[k] = cand;
        }
    }

    for (std::size_t k = 0; k < md; ++k) out.roots[k] = z[k];
    for (std::size_t k = md; k < m; ++k) out.roots[k] = 0.0;
    for (std::size_t k = 0; k < m; ++k) out.residuals[k] = std::abs(horner(monic, out.roots[k]));
    return out;
}

std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
    std::vector<cplx> c{1.0};
    for (cplx r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] -= r * c[k - 1];
    }
    return c;
}

}  // namespace hyperdecay
