#include "hyperdecay/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "hyperdecay/error.hpp"
#include "hyperdecay/geometry.hpp"

namespace hyperdecay {

namespace {

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

HessianClass sample_hessian(const OperatorSymbol& sym, const FrequencyGrid& g, const std::vector<std::size_t>& nodes,
                            int slot, int samples) {
    if (nodes.empty() || samples <= 0) return HessianUnknown{};
    const int n = sym.dim();
    const std::size_t stride = std::max<std::size_t>(1, nodes.size() / static_cast<std::size_t>(samples));
    int min_rank = n + 1, used = 0;
    for (std::size_t a = stride / 2; a < nodes.size() && used < samples; a += stride) {
        auto xi = g.node(nodes[a]);
        if (euclidean_norm(xi) < 2 * g.spacing()) continue;
        try {
            HessianInfo h = hessian_at(sym, xi, slot, 1e-8);
            min_rank = std::min(min_rank, h.rank);
            ++used;
        } catch (const NearMultiplicityError&) {
        }
    }
    if (used == 0) return HessianUnknown{};
    if (min_rank >= n) return HessianNondegenerate{};
    return HessianRankDeficient{min_rank};
}

Convexity sample_convexity(const OperatorSymbol& sym, const FrequencyGrid& g, int slot, double r_lo, double r_hi,
                           const ClassifyOptions& opt) {
    if (sym.dim() != 2 || !opt.assess_convexity) return ConvexityNotAssessed{};
    RealBranch f = real_part_branch(sym, slot);
    std::vector<double> levels;
    for (double rho : {r_lo, r_hi}) {
        std::vector<double> x{rho, 0.0};
        levels.push_back(f(x));
    }
    ConvexityOptions co;
    co.grid_points = opt.convexity_points;
    co.max_gamma = sym.order();
    try {
        return convexity_scan(f, 2, g.extent(), levels, co).result;
    } catch (const NumericalError&) {
        return ConvexityNotAssessed{};
    }
}

}  // namespace

DecayPrediction Classification::prediction(DerivativeOrder deriv) const {
    return predict_decay(behaviors, field.grid.dim(), deriv);
}

Classification classify_symbol(const OperatorSymbol& sym, const FrequencyGrid& grid, const ClassifyOptions& opt) {
    Classification c;
    c.symbol = sym;
    c.field = track_branches(sym, grid);
    const auto& f = c.field;
    const auto& g = f.grid;
    const int m = sym.order();
    const int n = sym.dim();

    for (std::size_t i = 0; i < f.size(); ++i) {
        auto xi = g.node(i);
        double br = japanese_bracket(xi);
        for (int k = 0; k < m; ++k) c.root_bound = std::max(c.root_bound, std::abs(f.root(i, k)) / br);
    }

    c.stability = stability_scan(f, opt.stability);
    c.clusters = multiplicity_clusters(f, opt.disc_threshold);
    if (c.stability.kind == StabilityKind::unstable) {
        c.notes.push_back("unstable, no decay predicted");
        return c;
    }
    if (c.stability.kind == StabilityKind::inconclusive) {
        c.notes.push_back("stability inconclusive: " + c.stability.note);
        return c;
    }

    const double R = g.extent();
    const double rl = opt.large_fraction * R;
    const double rmin = opt.stability.min_radius;
    const double axis_tol = opt.stability.on_axis_tol;
    std::vector<std::size_t> large, bounded;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double r = g.node_norm(i);
        if (r < rmin) continue;
        (r >= rl ? large : bounded).push_back(i);
    }
    auto tol_at = [&](std::size_t i) { return axis_tol * japanese_bracket(g.node(i)); };

    // large region, branches identified by real-part order
    for (int k = 0; k < m && !large.empty(); ++k) {
        auto rk = real_slot_roots(f, k);
        bool all_zero = true;
        double mn = std::numeric_limits<double>::infinity();
        std::vector<double> lx, ly;
        for (std::size_t i : large) {
            double im = rk[i].imag();
            mn = std::min(mn, im);
            if (std::abs(im) > tol_at(i)) {
                all_zero = false;
                if (im > 0) {
                    lx.push_back(std::log(g.node_norm(i)));
                    ly.push_back(std::log(im));
                }
            }
        }
        BranchBehavior b;
        b.branch = k;
        b.region = Region::large;
        double slope = lx.size() >= 2 ? slope_of(lx, ly) : 0.0;
        if (all_zero) {
            b.location = OnAxis{};
        } else if (mn >= opt.stability.strong_eps && slope >= opt.separation_slope) {
            b.location = Separated{mn};
        } else {
            b.location = AsymptoticToAxis{slope};
            if (mn <= 0) b.note = "Im tau vanishes on part of the outer shell";
        }
        if (!std::holds_alternative<Separated>(b.location)) {
            b.hessian = sample_hessian(sym, g, large, k, opt.hessian_samples);
            if (!std::holds_alternative<HessianNondegenerate>(b.hessian))
                b.convexity = sample_convexity(sym, g, k, 0.4 * R, 0.6 * R, opt);
        }
        c.behaviors.push_back(b);
    }

    if (!bounded.empty()) {
        bool fully_on_axis = true;
        for (std::size_t i : bounded) {
            double t = tol_at(i);
            for (int k = 0; k < m && fully_on_axis; ++k)
                if (std::abs(f.root(i, k).imag()) > t) fully_on_axis = false;
            if (!fully_on_axis) break;
        }
        if (fully_on_axis) {
            for (int k = 0; k < m; ++k) {
                BranchBehavior b;
                b.branch = k;
                b.region = Region::bounded;
                b.location = OnAxis{};
                b.hessian = sample_hessian(sym, g, bounded, k, opt.hessian_samples);
                if (!std::holds_alternative<HessianNondegenerate>(b.hessian))
                    b.convexity = sample_convexity(sym, g, k, 0.3 * rl, 0.6 * rl, opt);
                c.behaviors.push_back(b);
            }
        } else {
            std::optional<RootField> zoom;
            for (int k = 0; k < m; ++k) {
                auto roots_k = imag_slot_roots(f, k);
                std::vector<double> im(roots_k.size());
                for (std::size_t i = 0; i < im.size(); ++i) im[i] = roots_k[i].imag();
                double mn = std::numeric_limits<double>::infinity();
                for (std::size_t i : bounded) mn = std::min(mn, im[i]);

                ZeroSet zs = zero_set(g, im, axis_tol, rmin);
                std::vector<std::vector<double>> pts;
                for (const auto& p : zs.points)
                    if (euclidean_norm(p) < rl) pts.push_back(p);

                BranchBehavior b;
                b.branch = k;
                b.region = Region::bounded;
                if (pts.empty()) {
                    if (!(mn > 0)) continue;
                    b.location = Separated{mn};
                    c.behaviors.push_back(b);
                    continue;
                }

                MeetsAxisDetail det;
                det.slot = k;
                det.zero_points = pts.size();
                ContactOptions co;
                co.on_axis_tol = axis_tol;
                co.min_radius = rmin;
                try {
                    // contact is local: refit on a finer window around the zero set
                    double zmax = 0.0;
                    for (const auto& p : pts) zmax = std::max(zmax, euclidean_norm(p));
                    const double Rc = std::min(g.extent(), std::max(opt.contact_extent, 1.2 * zmax));
                    const int Pc = opt.contact_points > 0 ? opt.contact_points : (n == 1 ? 2049 : n == 2 ? 257 : 41);
                    if (Rc < g.extent() || Pc > g.points_per_axis()) {
                        if (!zoom) zoom = track_branches(sym, FrequencyGrid(n, Rc, Pc));
                        auto zr = imag_slot_roots(*zoom, k);
                        std::vector<double> zim(zr.size());
                        for (std::size_t i = 0; i < zim.size(); ++i) zim[i] = zr[i].imag();
                        ZeroSet zz = zero_set(zoom->grid, zim, axis_tol, rmin);
                        std::vector<std::vector<double>> zpts;
                        for (const auto& p : zz.points)
                            if (euclidean_norm(p) < rl) zpts.push_back(p);
                        if (zpts.empty()) zpts = pts;
                        det.contact = contact_order_fit(zoom->grid, zim, zpts, co);
                    } else {
                        det.contact = contact_order_fit(g, im, pts, co);
                    }
                } catch (const OnAxisError&) {
                    b.location = OnAxis{};
                    b.hessian = sample_hessian(sym, g, bounded, k, opt.hessian_samples);
                    c.behaviors.push_back(b);
                    c.notes.push_back("bounded slot " + std::to_string(k) + " is on the axis near its zero set");
                    continue;
                }
                det.codim = estimate_codim(g, pts);

                MeetsAxis ma;
                ma.s = det.contact.s;
                ma.s1 = det.contact.s1;
                if (ma.s < 1.0) {
                    c.notes.push_back("fitted contact order below 1 clamped to 1");
                    ma.s = 1.0;
                }
                ma.s1 = std::max(ma.s1, ma.s);
                ma.codim = det.codim.rounded;
                ma.at_origin = true;
                for (const auto& p : pts)
                    if (euclidean_norm(p) > 1.5 * g.spacing()) ma.at_origin = false;

                // real part and coincidences at the nodes nearest the zero set
                ma.real_part_zero = true;
                int L = 1;
                for (const auto& p : pts) {
                    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
                    for (int d = 0; d < n; ++d)
                        idx[static_cast<std::size_t>(d)] = g.nearest_axis_index(p[static_cast<std::size_t>(d)]);
                    std::size_t node = g.flatten(idx);
                    auto xi = g.node(node);
                    double br = japanese_bracket(xi);
                    cplx tk = roots_k[node];
                    if (std::abs(tk.real()) > 1e-6 * br) ma.real_part_zero = false;
                    double link = cluster_link_tolerance(opt.disc_threshold, xi);
                    int cnt = 0;
                    for (int q = 0; q < m; ++q)
                        if (std::abs(f.root(node, q) - tk) <= link) ++cnt;
                    L = std::max(L, cnt);
                }
                b.location = ma;
                b.multiplicity = L;
                c.behaviors.push_back(b);
                c.contacts.push_back(det);
            }

            // multiplicities away from the axis inside the bounded region
            for (const auto& cl : c.clusters) {
                double r = euclidean_norm(cl.representative);
                if (r >= rl || r < rmin) continue;
                if (!(cl.min_im > axis_tol * japanese_bracket(cl.representative))) continue;
                BranchBehavior b;
                b.branch = cl.branches.empty() ? 0 : cl.branches.front();
                b.region = Region::bounded;
                b.location = Separated{cl.min_im};
                b.multiplicity = cl.L;
                b.note = "roots coincide away from the axis";
                c.behaviors.push_back(b);
            }
        }
    }

    // one l for all zero sets: the smallest
    double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0;
    for (const auto& b : c.behaviors)
        if (auto* ma = std::get_if<MeetsAxis>(&b.location)) {
            lmin = std::min(lmin, ma->codim);
            lmax = std::max(lmax, ma->codim);
        }
    if (lmax > lmin) {
        c.codim_flag = true;
        c.notes.push_back("zero sets with different codimensions; the smallest is used");
        for (auto& b : c.behaviors)
            if (auto* ma = std::get_if<MeetsAxis>(&b.location)) ma->codim = lmin;
    }
    return c;
}

}  // namespace hyperdecay
