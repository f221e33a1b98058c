#include "hyperdecay/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

const char* to_string(StabilityKind k) {
    switch (k) {
        case StabilityKind::unstable: return "unstable";
        case StabilityKind::on_axis: return "on_axis";
        case StabilityKind::stable: return "stable";
        case StabilityKind::strongly_stable: return "strongly_stable";
        case StabilityKind::inconclusive: return "inconclusive";
    }
    return "?";
}

StabilityVerdict stability_scan(const RootField& field, const StabilityOptions& opt) {
    const auto& g = field.grid;
    const double R = g.extent();
    const double shell_r = opt.shell_fraction * R;
    const double origin_r = 1e-12 * std::max(1.0, R);

    StabilityVerdict v;
    v.min_im = std::numeric_limits<double>::infinity();
    v.shell_min_im = std::numeric_limits<double>::infinity();

    std::vector<std::pair<double, std::size_t>> bad;
    std::size_t shell_nodes = 0, shell_zero = 0, scanned = 0;
    bool has_shell = false, has_inner = false;
    std::vector<double> xi(static_cast<std::size_t>(g.dim()));

    for (std::size_t i = 0; i < field.size(); ++i) {
        g.node(i, xi);
        const double r = euclidean_norm(xi);
        if (r < opt.min_radius) continue;
        ++scanned;
        const double tol = opt.on_axis_tol * japanese_bracket(xi);
        const double mi = field.min_im(i);
        if (mi < v.min_im) {
            v.min_im = mi;
            v.min_im_xi = xi;
        }
        if (mi < -tol) bad.push_back({mi, i});

        bool zero = false;
        for (int k = 0; k < field.m; ++k)
            if (std::abs(field.root(i, k).imag()) <= tol) zero = true;

        const bool shell = r >= shell_r;
        if (shell) {
            has_shell = true;
            ++shell_nodes;
            v.shell_min_im = std::min(v.shell_min_im, mi);
            if (zero) ++shell_zero;
        } else {
            has_inner = true;
        }
        if (zero) {
            ++v.zero_nodes;
            if (r > origin_r) {
                v.zero_set_only_origin = false;
                if (g.on_boundary(i)) v.zero_set_touches_boundary = true;
                if (v.witnesses.size() < 8 && bad.empty()) v.witnesses.push_back(xi);
            }
        }
    }
    if (scanned == 0) throw ContractViolation("stability scan: no grid node in the scanned region");
    if (!has_shell || !has_inner) v.note = "grid does not cover both a bounded ball and an outer shell";

    if (!bad.empty()) {
        std::sort(bad.begin(), bad.end());
        v.witnesses.clear();
        for (std::size_t k = 0; k < bad.size() && k < 8; ++k) v.witnesses.push_back(g.node(bad[k].second));
        v.kind = StabilityKind::unstable;
        return v;
    }

    v.shell_on_axis = shell_nodes > 0 && shell_zero == shell_nodes;
    if (!v.zero_set_only_origin) {
        if (v.shell_on_axis) {
            v.kind = StabilityKind::on_axis;
            v.note = "real roots on the whole outer shell";
        } else if (v.zero_set_touches_boundary) {
            v.kind = StabilityKind::inconclusive;
            v.note = "zero set of Im tau reaches the grid boundary";
        } else {
            v.kind = StabilityKind::on_axis;
            v.note = "Im tau vanishes away from the origin";
        }
        return v;
    }
    v.witnesses.clear();
    if (v.zero_nodes > 0) v.witnesses.push_back(std::vector<double>(static_cast<std::size_t>(g.dim()), 0.0));
    v.kind = v.shell_min_im >= opt.strong_eps ? StabilityKind::strongly_stable : StabilityKind::stable;
    return v;
}

}  // namespace hyperdecay
