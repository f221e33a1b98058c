#pragma once

#include <span>
#include <vector>

#include "hyperdecay/roots.hpp"

namespace hyperdecay {

struct CodimEstimate {
    double value = 0.0;   // raw regression slope
    double stderr_ = 0.0;
    int rounded = 1;      // nearest integer clamped to [1, n]
    std::vector<double> eps;
    std::vector<double> counts;
};

// Slope of log #{nodes within eps of the set} against log eps, eps in
// {2, 4, 8} * spacing.
CodimEstimate estimate_codim(const FrequencyGrid& grid, std::span<const std::vector<double>> points);

struct MultiplicityCluster {
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> core;  // 1D local minima of |disc| along some axis
    int L = 2;
    CodimEstimate codim;
    double min_im = 0.0;
    std::vector<int> branches;
    std::vector<double> representative;  // xi of the smallest |disc| in the cluster
};

std::vector<MultiplicityCluster> multiplicity_clusters(const RootField& field, double disc_threshold);

// Largest group of roots chained by |tau_a - tau_b| <= tol.
std::vector<int> largest_root_group(std::span<const cplx> roots, double tol);
double cluster_link_tolerance(double disc_threshold, std::span<const double> xi);

}  // namespace hyperdecay
