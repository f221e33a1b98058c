#pragma once

#include <string>
#include <vector>

#include "hyperdecay/roots.hpp"

namespace hyperdecay {

enum class StabilityKind { unstable, on_axis, stable, strongly_stable, inconclusive };

const char* to_string(StabilityKind k);

struct StabilityOptions {
    double on_axis_tol = 1e-8;    // |Im tau| <= tol * <xi> counts as real
    double strong_eps = 1e-3;     // outer shell separation for strong stability
    double shell_fraction = 0.9;  // outer shell is |xi| >= fraction * R
    double min_radius = 0.0;      // scan only |xi| >= min_radius (data supported away from a ball)
};

struct StabilityVerdict {
    StabilityKind kind = StabilityKind::stable;
    double min_im = 0.0;
    std::vector<double> min_im_xi;
    double shell_min_im = 0.0;
    std::vector<std::vector<double>> witnesses;
    std::size_t zero_nodes = 0;
    bool zero_set_only_origin = true;
    bool zero_set_touches_boundary = false;
    bool shell_on_axis = false;
    std::string note;

    bool is_stable() const {
        return kind == StabilityKind::stable || kind == StabilityKind::strongly_stable ||
               kind == StabilityKind::on_axis;
    }
};

StabilityVerdict stability_scan(const RootField& field, const StabilityOptions& opt = {});

}  // namespace hyperdecay
