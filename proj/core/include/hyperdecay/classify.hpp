#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperdecay/clusters.hpp"
#include "hyperdecay/predict.hpp"
#include "hyperdecay/stability.hpp"

namespace hyperdecay {

struct ClassifyOptions {
    double disc_threshold = 0.05;       // cluster threshold on |disc| / scale
    StabilityOptions stability;
    double large_fraction = 0.9;        // large region is |xi| >= fraction * R
    double separation_slope = -0.5;     // shell log-log slope below this is "asymptotic"
    int hessian_samples = 12;
    bool assess_convexity = true;
    int convexity_points = 121;
    double contact_extent = 2.0;  // contact orders are refit on [-a, a]^n, a >= 1.2 max|zero set|
    int contact_points = 0;       // 0: 2049, 257, 41 for n = 1, 2, >= 3
};

struct MeetsAxisDetail {
    int slot = 0;
    ContactOrder contact;
    CodimEstimate codim;
    std::size_t zero_points = 0;
};

struct Classification {
    OperatorSymbol symbol;
    RootField field;
    StabilityVerdict stability;
    std::vector<MultiplicityCluster> clusters;
    std::vector<BranchBehavior> behaviors;
    std::vector<MeetsAxisDetail> contacts;
    bool codim_flag = false;  // zero sets with different codimensions, smallest used
    double root_bound = 0.0;  // max_k |tau_k| / <xi> over the grid
    std::vector<std::string> notes;

    bool predicts() const { return !behaviors.empty(); }
    DecayPrediction prediction(DerivativeOrder deriv = {}) const;
};

Classification classify_symbol(const OperatorSymbol& sym, const FrequencyGrid& grid, const ClassifyOptions& opt = {});

}  // namespace hyperdecay
