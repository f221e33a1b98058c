#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hyperdecay/geometry.hpp"

namespace hyperdecay {

struct ConvexitySatisfied {
    std::optional<double> gamma;  // empty when every level set was empty
};
struct ConvexityViolated {
    double gamma0 = 0.0;
};
struct ConvexityNotAssessed {};

using Convexity = std::variant<ConvexitySatisfied, ConvexityViolated, ConvexityNotAssessed>;

struct ConvexityOptions {
    int grid_points = 161;
    int max_gamma = 0;            // clamp for the fitted order (0: none)
    int candidates_per_level = 12;
};

struct LevelCurveReport {
    double level = 0.0;
    std::size_t points = 0;
    bool sign_change = false;
    double min_abs_curvature = 0.0;
    double max_abs_curvature = 0.0;
    double order = 0.0;
};

struct ConvexityScan {
    Convexity result;
    std::vector<LevelCurveReport> levels;
};

// Level sets of a real branch on [-extent, extent]^2, traced by marching
// squares. Only n = 2 is assessed.
ConvexityScan convexity_scan(const RealBranch& branch, int n, double extent, std::span<const double> levels,
                             const ConvexityOptions& opt = {});

// Order of tangency of the curve {f = level} with its tangent line at p.
int tangent_contact_order(const RealBranch& f, std::span<const double> p, double level, double half_width);

}  // namespace hyperdecay
