#include "hyperdecay/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

namespace {

bool re_desc(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

bool im_asc(cplx a, cplx b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
}

struct Fit {
    double slope = 0.0, stderr_ = 0.0;
};

Fit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Fit f;
    f.slope = sxy / sxx;
    if (x.size() > 2) {
        double rss = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double r = y[i] - my - f.slope * (x[i] - mx);
            rss += r * r;
        }
        f.stderr_ = std::sqrt(rss / (n - 2) / sxx);
    }
    return f;
}

}  // namespace

RealBranch real_part_branch(const OperatorSymbol& sym, int slot) {
    if (slot < 0 || slot >= sym.order()) throw ContractViolation("branch slot out of range");
    return [sym, slot](std::span<const double> xi) {
        auto c = tau_poly_at(sym, xi);
        auto rs = roots_at(c, xi);
        std::sort(rs.roots.begin(), rs.roots.end(), re_desc);
        return rs.roots[static_cast<std::size_t>(slot)].real();
    };
}

std::vector<cplx> imag_slot_roots(const RootField& field, int slot) {
    if (slot < 0 || slot >= field.m) throw ContractViolation("branch slot out of range");
    std::vector<cplx> out(field.size());
    std::vector<cplx> r(static_cast<std::size_t>(field.m));
    for (std::size_t i = 0; i < field.size(); ++i) {
        auto s = field.roots(i);
        std::copy(s.begin(), s.end(), r.begin());
        std::sort(r.begin(), r.end(), im_asc);
        out[i] = r[static_cast<std::size_t>(slot)];
    }
    return out;
}

std::vector<double> imag_slot_field(const RootField& field, int slot) {
    auto r = imag_slot_roots(field, slot);
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i].imag();
    return out;
}

std::vector<cplx> real_slot_roots(const RootField& field, int slot) {
    if (slot < 0 || slot >= field.m) throw ContractViolation("branch slot out of range");
    std::vector<cplx> out(field.size());
    std::vector<cplx> r(static_cast<std::size_t>(field.m));
    for (std::size_t i = 0; i < field.size(); ++i) {
        auto s = field.roots(i);
        std::copy(s.begin(), s.end(), r.begin());
        std::sort(r.begin(), r.end(), re_desc);
        out[i] = r[static_cast<std::size_t>(slot)];
    }
    return out;
}

std::vector<double> branch_imag(const RootField& field, int branch) {
    if (branch < 0) {
        std::vector<double> out(field.size());
        for (std::size_t i = 0; i < field.size(); ++i) out[i] = field.min_im(i);
        return out;
    }
    if (branch >= field.m) throw ContractViolation("branch index out of range");
    std::vector<double> out(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) out[i] = field.root(i, branch).imag();
    return out;
}

ZeroSet zero_set(const FrequencyGrid& grid, std::span<const double> im, double tol, double min_radius) {
    if (im.size() != grid.size()) throw ContractViolation("field size does not match grid");
    ZeroSet z;
    const int n = grid.dim();
    std::vector<double> xi(static_cast<std::size_t>(n)), xj(static_cast<std::size_t>(n));
    std::vector<char> zero(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.node(i, xi);
        if (std::abs(im[i]) <= tol * japanese_bracket(xi)) zero[i] = 1;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.node(i, xi);
        if (zero[i]) {
            if (euclidean_norm(xi) >= min_radius) {
                z.points.push_back(xi);
                z.nodes.push_back(i);
            }
            continue;
        }
        for (int ax = 0; ax < n; ++ax) {
            std::size_t j;
            if (!grid.neighbor(i, ax, +1, j) || zero[j]) continue;
            if ((im[i] < 0) == (im[j] < 0)) continue;
            grid.node(j, xj);
            double t = im[i] / (im[i] - im[j]);
            std::vector<double> p(xi);
            p[static_cast<std::size_t>(ax)] += t * (xj[static_cast<std::size_t>(ax)] - xi[static_cast<std::size_t>(ax)]);
            if (euclidean_norm(p) >= min_radius - 1e-12) z.points.push_back(std::move(p));
        }
    }
    return z;
}

ContactOrder contact_order_fit(const FrequencyGrid& grid, std::span<const double> im,
                               std::span<const std::vector<double>> zero_points, const ContactOptions& opt) {
    if (zero_points.empty()) throw ContractViolation("contact order fit needs a nonempty zero set");
    if (im.size() != grid.size()) throw ContractViolation("field size does not match grid");
    const double dlo = opt.inner_spacings * grid.spacing();
    const double dhi = opt.outer_fraction * grid.extent();
    if (!(dhi > dlo)) throw ContractViolation("contact order fit: shell range [2 spacing, 0.1 R] is empty");
    const int K = std::max(3, opt.shells);
    const double beta = std::pow(dhi / dlo, 1.0 / (K - 1));
    const double band_lo = dlo / std::sqrt(beta), band_hi = dhi * std::sqrt(beta);

    struct Extreme {
        double lo_v = std::numeric_limits<double>::infinity(), lo_d = 0;
        double hi_v = -1.0, hi_d = 0;
        bool any = false, positive = false;
    };
    std::vector<Extreme> shells(static_cast<std::size_t>(K));
    std::vector<double> xi(static_cast<std::size_t>(grid.dim()));

    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.node(i, xi);
        if (euclidean_norm(xi) < opt.min_radius) continue;
        double d2 = std::numeric_limits<double>::infinity();
        for (const auto& p : zero_points) {
            double s = 0;
            for (std::size_t k = 0; k < xi.size(); ++k) s += (xi[k] - p[k]) * (xi[k] - p[k]);
            d2 = std::min(d2, s);
        }
        double d = std::sqrt(d2);
        if (d < band_lo || d >= band_hi) continue;
        int k = static_cast<int>(std::floor(std::log(d / band_lo) / std::log(beta)));
        if (k < 0 || k >= K) continue;
        auto& sh = shells[static_cast<std::size_t>(k)];
        double v = std::abs(im[i]);
        sh.any = true;
        if (v <= opt.on_axis_tol * japanese_bracket(xi)) continue;
        sh.positive = true;
        if (v < sh.lo_v) {
            sh.lo_v = v;
            sh.lo_d = d;
        }
        if (v > sh.hi_v) {
            sh.hi_v = v;
            sh.hi_d = d;
        }
    }

    ContactOrder co;
    int nonempty = 0;
    for (const auto& sh : shells) {
        if (sh.any) ++nonempty;
        if (!sh.positive) continue;
        co.lower_dist.push_back(sh.lo_d);
        co.lower_im.push_back(sh.lo_v);
        co.upper_dist.push_back(sh.hi_d);
        co.upper_im.push_back(sh.hi_v);
    }
    if (nonempty < 3) throw ContractViolation("contact order fit needs at least 3 sampling shells");
    if (co.lower_dist.empty()) throw OnAxisError("Im tau vanishes on every sampling shell; no finite contact order");
    if (co.lower_dist.size() < 3) throw OnAxisError("Im tau vanishes on most sampling shells; no finite contact order");
    co.shells = static_cast<int>(co.lower_dist.size());

    auto logs = [](const std::vector<double>& v) {
        std::vector<double> o(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) o[i] = std::log(v[i]);
        return o;
    };
    Fit lo = line_fit(logs(co.lower_dist), logs(co.lower_im));
    Fit hi = line_fit(logs(co.upper_dist), logs(co.upper_im));
    co.s = lo.slope;
    co.stderr_s = lo.stderr_;
    co.s1 = hi.slope;
    co.stderr_s1 = hi.stderr_;
    return co;
}

ContactOrder contact_order_fit(const RootField& field, std::span<const std::vector<double>> zero_points, int branch,
                               const ContactOptions& opt) {
    auto im = branch_imag(field, branch);
    return contact_order_fit(field.grid, im, zero_points, opt);
}

HessianInfo hessian_at(const RealBranch& f, std::span<const double> xi0, double step) {
    const int n = static_cast<int>(xi0.size());
    if (n < 1) throw ContractViolation("hessian_at needs a point");
    const double br = japanese_bracket(xi0);
    const double h = step > 0 ? step : 1e-3 * br;
    std::vector<double> x(xi0.begin(), xi0.end());
    auto at = [&](int a, double da, int b, double db) {
        x.assign(xi0.begin(), xi0.end());
        if (a >= 0) x[static_cast<std::size_t>(a)] += da;
        if (b >= 0) x[static_cast<std::size_t>(b)] += db;
        return f(x);
    };
    const double f0 = at(-1, 0, -1, 0);
    Eigen::MatrixXd H(n, n);
    for (int a = 0; a < n; ++a) {
        H(a, a) = (at(a, h, -1, 0) - 2.0 * f0 + at(a, -h, -1, 0)) / (h * h);
        for (int b = a + 1; b < n; ++b) {
            double v = (at(a, h, b, h) - at(a, h, b, -h) - at(a, -h, b, h) + at(a, -h, b, -h)) / (4.0 * h * h);
            H(a, b) = H(b, a) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    HessianInfo info;
    info.step = h;
    double maxabs = 0.0;
    for (int k = 0; k < n; ++k) maxabs = std::max(maxabs, std::abs(es.eigenvalues()(k)));
    info.threshold = std::max(1e-5 * maxabs, 1e-8 * std::max(1.0, std::abs(f0)) / (br * br));
    info.det = 1.0;
    for (int k = 0; k < n; ++k) {
        double l = es.eigenvalues()(k);
        info.eigenvalues.push_back(l);
        int s = std::abs(l) <= info.threshold ? 0 : (l > 0 ? 1 : -1);
        info.signs.push_back(s);
        if (s != 0) ++info.rank;
        info.det *= l;
    }
    if (info.rank < n) info.det = 0.0;
    return info;
}

HessianInfo hessian_at(const OperatorSymbol& sym, std::span<const double> xi, int slot, double disc_threshold) {
    if (static_cast<int>(xi.size()) != sym.dim()) throw ContractViolation("xi dimension mismatch");
    const double h = 1e-3 * japanese_bracket(xi);
    if (sym.order() >= 2) {
        const int n = sym.dim();
        std::vector<double> x(xi.begin(), xi.end());
        for (int a = -1; a < n; ++a)
            for (double sa : {-1.0, 1.0}) {
                x.assign(xi.begin(), xi.end());
                if (a >= 0) x[static_cast<std::size_t>(a)] += sa * h;
                double v = std::abs(discriminant_at(sym, x)) / discriminant_scale(sym.order(), x);
                if (v < disc_threshold)
                    throw NearMultiplicityError("Hessian stencil crosses a discriminant zero");
            }
    }
    return hessian_at(real_part_branch(sym, slot), xi, h);
}

Theorem4Result theorem4_check(const OperatorSymbol& sym) {
    const int n = sym.dim(), m = sym.order();
    const SparsePoly& pm = sym.coeff(m);
    if (pm.is_zero()) throw ContractViolation("theorem4_check: P(0, xi) vanishes identically");
    Theorem4Result r;
    std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
    auto c = tau_poly_at(sym, zero);
    // dP/dtau at tau = 0 is the tau^1 coefficient
    r.d_tau = c[static_cast<std::size_t>(m - 1)];
    r.d_tau_ok = std::abs(r.d_tau) > 1e-12;
    r.min_alpha = pm.min_degree();

    double slope = std::numeric_limits<double>::infinity();
    for (const auto& w : unit_directions(n, default_num_directions(n))) {
        std::vector<double> lx, ly;
        bool ok = true;
        for (double e : {1e-2, 5e-3, 2.5e-3}) {
            std::vector<double> x(w);
            for (double& v : x) v *= e;
            double a = std::abs(pm(x));
            if (!(a > 0)) {
                ok = false;
                break;
            }
            lx.push_back(std::log(e));
            ly.push_back(std::log(a));
        }
        if (!ok) continue;
        slope = std::min(slope, line_fit(lx, ly).slope);
    }
    r.scaling_slope = slope;
    r.cross_check_ok = std::isfinite(slope) && std::abs(slope - r.min_alpha) < 0.1;
    return r;
}

}  // namespace hyperdecay
