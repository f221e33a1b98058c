#include "hyperdecay/clusters.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

namespace {

struct Line {
    double slope = 0.0, stderr_ = 0.0;
};

Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Line l;
    l.slope = sxy / sxx;
    if (n > 2) {
        double rss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = y[i] - my - l.slope * (x[i] - mx);
            rss += r * r;
        }
        l.stderr_ = std::sqrt(rss / (n - 2) / sxx);
    }
    return l;
}

}  // namespace

CodimEstimate estimate_codim(const FrequencyGrid& grid, std::span<const std::vector<double>> points) {
    if (points.empty()) throw ContractViolation("codimension estimate needs a nonempty set");
    const int n = grid.dim();
    const double h = grid.spacing();
    const auto& ax = grid.axis();
    CodimEstimate est;
    std::vector<double> lx, ly;
    std::vector<char> mark(grid.size());
    for (double f : {2.0, 4.0, 8.0}) {
        const double eps = f * h;
        std::fill(mark.begin(), mark.end(), 0);
        std::size_t count = 0;
        std::vector<std::size_t> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n)), idx(static_cast<std::size_t>(n));
        for (const auto& p : points) {
            for (int d = 0; d < n; ++d) {
                auto l = std::lower_bound(ax.begin(), ax.end(), p[static_cast<std::size_t>(d)] - eps - 1e-12);
                auto u = std::upper_bound(ax.begin(), ax.end(), p[static_cast<std::size_t>(d)] + eps + 1e-12);
                lo[static_cast<std::size_t>(d)] = static_cast<std::size_t>(l - ax.begin());
                hi[static_cast<std::size_t>(d)] = static_cast<std::size_t>(u - ax.begin());
                if (lo[static_cast<std::size_t>(d)] >= hi[static_cast<std::size_t>(d)]) goto next_point;
            }
            idx = lo;
            for (;;) {
                double d2 = 0.0;
                for (int d = 0; d < n; ++d) {
                    double dx = ax[idx[static_cast<std::size_t>(d)]] - p[static_cast<std::size_t>(d)];
                    d2 += dx * dx;
                }
                if (d2 <= eps * eps * (1 + 1e-12)) {
                    std::size_t fl = grid.flatten(idx);
                    if (!mark[fl]) {
                        mark[fl] = 1;
                        ++count;
                    }
                }
                int d = n - 1;
                while (d >= 0) {
                    if (++idx[static_cast<std::size_t>(d)] < hi[static_cast<std::size_t>(d)]) break;
                    idx[static_cast<std::size_t>(d)] = lo[static_cast<std::size_t>(d)];
                    --d;
                }
                if (d < 0) break;
            }
        next_point:;
        }
        est.eps.push_back(eps);
        est.counts.push_back(static_cast<double>(count));
        if (count > 0) {
            lx.push_back(std::log(eps));
            ly.push_back(std::log(static_cast<double>(count)));
        }
    }
    if (lx.size() < 2) {
        est.value = n;
        est.rounded = n;
        return est;
    }
    Line l = fit_line(lx, ly);
    est.value = l.slope;
    est.stderr_ = l.stderr_;
    est.rounded = std::clamp(static_cast<int>(std::lround(l.slope)), 1, n);
    return est;
}

double cluster_link_tolerance(double disc_threshold, std::span<const double> xi) {
    return std::max(1e-6, 2.0 * std::sqrt(disc_threshold)) * japanese_bracket(xi);
}

std::vector<int> largest_root_group(std::span<const cplx> roots, double tol) {
    const int m = static_cast<int>(roots.size());
    std::vector<int> comp(static_cast<std::size_t>(m), -1);
    std::vector<int> best;
    for (int s = 0; s < m; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> grp{s};
        comp[static_cast<std::size_t>(s)] = s;
        for (std::size_t q = 0; q < grp.size(); ++q)
            for (int b = 0; b < m; ++b)
                if (comp[static_cast<std::size_t>(b)] < 0 &&
                    std::abs(roots[static_cast<std::size_t>(grp[q])] - roots[static_cast<std::size_t>(b)]) <= tol) {
                    comp[static_cast<std::size_t>(b)] = s;
                    grp.push_back(b);
                }
        if (grp.size() > best.size()) best = grp;
    }
    std::sort(best.begin(), best.end());
    return best;
}

std::vector<MultiplicityCluster> multiplicity_clusters(const RootField& field, double disc_threshold) {
    std::vector<MultiplicityCluster> out;
    if (field.m < 2) return out;
    const auto& g = field.grid;
    const std::size_t N = field.size();
    std::vector<char> flag(N, 0);
    for (std::size_t i = 0; i < N; ++i) flag[i] = field.normalized_disc(i) < disc_threshold;

    std::vector<char> seen(N, 0);
    for (std::size_t s = 0; s < N; ++s) {
        if (!flag[s] || seen[s]) continue;
        MultiplicityCluster c;
        std::deque<std::size_t> q{s};
        seen[s] = 1;
        while (!q.empty()) {
            std::size_t i = q.front();
            q.pop_front();
            c.nodes.push_back(i);
            for (int ax = 0; ax < g.dim(); ++ax)
                for (int dir : {-1, 1}) {
                    std::size_t nb;
                    if (g.neighbor(i, ax, dir, nb) && flag[nb] && !seen[nb]) {
                        seen[nb] = 1;
                        q.push_back(nb);
                    }
                }
        }
        std::sort(c.nodes.begin(), c.nodes.end());

        std::size_t best = c.nodes.front();
        for (std::size_t i : c.nodes) {
            double v = field.normalized_disc(i);
            if (v < field.normalized_disc(best)) best = i;
            bool minimum = false;
            for (int ax = 0; ax < g.dim() && !minimum; ++ax) {
                bool ok = true, any = false;
                for (int dir : {-1, 1}) {
                    std::size_t nb;
                    if (g.neighbor(i, ax, dir, nb)) {
                        any = true;
                        if (field.normalized_disc(nb) < v) ok = false;
                    }
                }
                minimum = ok && any;
            }
            if (minimum) c.core.push_back(i);
        }
        if (c.core.empty()) c.core.push_back(best);
        c.representative = g.node(best);

        std::vector<std::vector<double>> pts;
        pts.reserve(c.core.size());
        for (std::size_t i : c.core) pts.push_back(g.node(i));
        c.codim = estimate_codim(g, pts);

        int L = 1;
        std::vector<int> branches;
        for (std::size_t i : c.core) {
            auto xi = g.node(i);
            auto grp = largest_root_group(field.roots(i), cluster_link_tolerance(disc_threshold, xi));
            if (static_cast<int>(grp.size()) > L) {
                L = static_cast<int>(grp.size());
                branches = grp;
            }
        }
        c.L = std::max(2, L);
        if (branches.empty()) branches = {0, 1};
        c.branches = branches;

        c.min_im = std::numeric_limits<double>::infinity();
        for (std::size_t i : c.nodes) {
            auto xi = g.node(i);
            auto grp = largest_root_group(field.roots(i), cluster_link_tolerance(disc_threshold, xi));
            if (grp.size() < 2) grp = branches;
            for (int k : grp) c.min_im = std::min(c.min_im, field.root(i, k).imag());
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace hyperdecay
