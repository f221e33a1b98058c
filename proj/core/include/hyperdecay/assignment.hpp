#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hyperdecay {

// perm[i] = column assigned to row i, minimizing the summed cost.
// Exact Hungarian for up to `exact_limit` rows, greedy plus pairwise-swap
// improvement above that.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost, int exact_limit = 12);

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& perm);

}  // namespace hyperdecay
