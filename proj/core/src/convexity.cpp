#include "hyperdecay/convexity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

namespace {

using P2 = std::array<double, 2>;

double call(const RealBranch& f, P2 p) { return f(std::span<const double>(p.data(), 2)); }

double bracket(P2 p) { return std::sqrt(1.0 + p[0] * p[0] + p[1] * p[1]); }

P2 gradient(const RealBranch& f, P2 p) {
    const double h = 1e-6 * bracket(p);
    return {(call(f, {p[0] + h, p[1]}) - call(f, {p[0] - h, p[1]})) / (2 * h),
            (call(f, {p[0], p[1] + h}) - call(f, {p[0], p[1] - h})) / (2 * h)};
}

double curvature(const RealBranch& f, P2 p) {
    const double h = 1e-3 * bracket(p);
    const double f0 = call(f, p);
    const double fx = (call(f, {p[0] + h, p[1]}) - call(f, {p[0] - h, p[1]})) / (2 * h);
    const double fy = (call(f, {p[0], p[1] + h}) - call(f, {p[0], p[1] - h})) / (2 * h);
    const double fxx = (call(f, {p[0] + h, p[1]}) - 2 * f0 + call(f, {p[0] - h, p[1]})) / (h * h);
    const double fyy = (call(f, {p[0], p[1] + h}) - 2 * f0 + call(f, {p[0], p[1] - h})) / (h * h);
    const double fxy = (call(f, {p[0] + h, p[1] + h}) - call(f, {p[0] + h, p[1] - h}) -
                        call(f, {p[0] - h, p[1] + h}) + call(f, {p[0] - h, p[1] - h})) /
                       (4 * h * h);
    const double g2 = fx * fx + fy * fy;
    return (fxx * fy * fy - 2 * fxy * fx * fy + fyy * fx * fx) / std::pow(g2, 1.5);
}

P2 project(const RealBranch& f, P2 p, double level) {
    for (int it = 0; it < 8; ++it) {
        double r = call(f, p) - level;
        P2 g = gradient(f, p);
        double g2 = g[0] * g[0] + g[1] * g[1];
        if (!(g2 > 0)) break;
        p = {p[0] - r * g[0] / g2, p[1] - r * g[1] / g2};
        if (std::abs(r) < 1e-15 * std::max(1.0, std::abs(level))) break;
    }
    return p;
}

P2 tangent(const RealBranch& f, P2 p) {
    P2 g = gradient(f, p);
    double gn = std::hypot(g[0], g[1]);
    return {-g[1] / gn, g[0] / gn};
}

}  // namespace

int tangent_contact_order(const RealBranch& f, std::span<const double> pspan, double level, double half_width) {
    P2 p{pspan[0], pspan[1]};
    P2 g = gradient(f, p);
    const double gn = std::hypot(g[0], g[1]);
    if (!(gn > 0)) throw NumericalError("level curve has a critical point");
    const P2 nu{g[0] / gn, g[1] / gn};
    const P2 t{-nu[1], nu[0]};

    const int K = 12;
    double S = half_width;
    for (int attempt = 0; attempt < 6; ++attempt, S *= 0.5) {
        Eigen::VectorXd hs(2 * K + 1);
        Eigen::MatrixXd V(2 * K + 1, 7);
        bool ok = true;
        double h = 0.0;
        for (int i = -K; i <= K && ok; ++i) {
            const double s = S * i / K;
            // h(s): signed offset along the normal back onto the level set
            double hh = (i == -K || i == 0) ? 0.0 : h;
            for (int it = 0; it < 40; ++it) {
                P2 q{p[0] + s * t[0] + hh * nu[0], p[1] + s * t[1] + hh * nu[1]};
                double F = call(f, q) - level;
                const double dh = 1e-7 * bracket(q);
                double dF = (call(f, {q[0] + dh * nu[0], q[1] + dh * nu[1]}) -
                             call(f, {q[0] - dh * nu[0], q[1] - dh * nu[1]})) /
                            (2 * dh);
                if (!(std::abs(dF) > 0)) {
                    ok = false;
                    break;
                }
                double step = F / dF;
                hh -= step;
                if (std::abs(step) < 1e-15 * std::max(1.0, S)) break;
            }
            if (!std::isfinite(hh) || std::abs(hh) > 2 * S) ok = false;
            h = hh;
            hs(i + K) = hh;
            double u = static_cast<double>(i) / K, pw = 1.0;
            for (int k = 0; k <= 6; ++k, pw *= u) V(i + K, k) = pw;
        }
        if (!ok) continue;
        Eigen::VectorXd c = V.colPivHouseholderQr().solve(hs);
        double mx = 0.0;
        for (int k = 2; k <= 6; ++k) mx = std::max(mx, std::abs(c(k)));
        if (mx <= 1e-13 * S) return 0;
        for (int k = 2; k <= 6; ++k)
            if (std::abs(c(k)) > 1e-4 * mx) return k;
    }
    throw NumericalError("could not follow the level curve in tangent coordinates");
}

ConvexityScan convexity_scan(const RealBranch& f, int n, double extent, std::span<const double> levels,
                             const ConvexityOptions& opt) {
    ConvexityScan scan;
    if (n != 2) {
        scan.result = ConvexityNotAssessed{};
        return scan;
    }
    if (!(extent > 0)) throw ContractViolation("convexity scan needs a positive extent");
    const int P = std::max(11, opt.grid_points);
    const double gstep = 2 * extent / (P - 1);
    std::vector<double> vals(static_cast<std::size_t>(P) * P);
    auto X = [&](int i) { return -extent + gstep * i; };
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) vals[static_cast<std::size_t>(i) * P + j] = call(f, {X(i), X(j)});

    bool violated = false, any_order = false;
    int best_order = 0;
    for (double level : levels) {
        LevelCurveReport rep;
        rep.level = level;
        std::vector<P2> pts;
        auto v = [&](int i, int j) { return vals[static_cast<std::size_t>(i) * P + j] - level; };
        for (int i = 0; i < P; ++i)
            for (int j = 0; j < P; ++j) {
                if (i + 1 < P && ((v(i, j) < 0) != (v(i + 1, j) < 0))) {
                    double t = v(i, j) / (v(i, j) - v(i + 1, j));
                    pts.push_back({X(i) + t * gstep, X(j)});
                }
                if (j + 1 < P && ((v(i, j) < 0) != (v(i, j + 1) < 0))) {
                    double t = v(i, j) / (v(i, j) - v(i, j + 1));
                    pts.push_back({X(i), X(j) + t * gstep});
                }
            }
        rep.points = pts.size();
        if (pts.empty()) {
            scan.levels.push_back(rep);
            continue;
        }
        std::vector<double> kap(pts.size());
        double kmax = 0.0, bx = 0.0;
        for (std::size_t a = 0; a < pts.size(); ++a) {
            pts[a] = project(f, pts[a], level);
            kap[a] = curvature(f, pts[a]);
            kmax = std::max(kmax, std::abs(kap[a]));
            bx = std::max(bx, std::max(std::abs(pts[a][0]), std::abs(pts[a][1])));
        }
        const double thr = 1e-6 * kmax + 1e-9;
        bool pos = false, neg = false;
        double kmin = std::numeric_limits<double>::infinity();
        for (double k : kap) {
            kmin = std::min(kmin, std::abs(k));
            if (k > thr) pos = true;
            if (k < -thr) neg = true;
        }
        rep.sign_change = pos && neg;
        rep.min_abs_curvature = kmin;
        rep.max_abs_curvature = kmax;
        if (rep.sign_change) violated = true;

        // candidates: well separated points of smallest |kappa|
        std::vector<std::size_t> order(pts.size());
        for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(kap[a]) < std::abs(kap[b]);
        });
        std::vector<P2> cand;
        for (std::size_t a : order) {
            if (static_cast<int>(cand.size()) >= opt.candidates_per_level) break;
            bool far = true;
            for (const auto& c : cand)
                if (std::hypot(c[0] - pts[a][0], c[1] - pts[a][1]) < 4 * gstep) far = false;
            if (far) cand.push_back(pts[a]);
        }
        const double S = std::min(4 * gstep, 0.25 * std::max(bx, gstep));
        int level_order = 0;
        for (P2 c : cand) {
            // golden section on |kappa| along the curve
            P2 t = tangent(f, c);
            auto phi = [&](double u) { return std::abs(curvature(f, project(f, {c[0] + u * t[0], c[1] + u * t[1]}, level))); };
            double a = -2 * gstep, b = 2 * gstep;
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = phi(x1), f2 = phi(x2);
            for (int it = 0; it < 40; ++it) {
                if (f1 < f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = phi(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = phi(x2);
                }
            }
            double u = 0.5 * (a + b);
            P2 r = project(f, {c[0] + u * t[0], c[1] + u * t[1]}, level);
            if (phi(0.0) < phi(u)) r = c;
            try {
                int k = tangent_contact_order(f, r, level, S);
                if (k == 0 && opt.max_gamma > 0) k = opt.max_gamma;
                level_order = std::max(level_order, k);
            } catch (const NumericalError&) {
            }
        }
        if (level_order > 0) {
            any_order = true;
            best_order = std::max(best_order, level_order);
        }
        rep.order = level_order;
        scan.levels.push_back(rep);
    }

    if (opt.max_gamma > 0) best_order = std::min(best_order, opt.max_gamma);
    if (violated) {
        scan.result = ConvexityViolated{static_cast<double>(std::max(2, best_order))};
    } else if (any_order) {
        scan.result = ConvexitySatisfied{static_cast<double>(best_order)};
    } else {
        scan.result = ConvexitySatisfied{std::nullopt};
    }
    return scan;
}

}  // namespace hyperdecay
