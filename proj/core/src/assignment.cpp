#include "hyperdecay/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

namespace {

// Shortest augmenting path form of the Hungarian method, O(m^3).
std::vector<int> hungarian(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> perm(n);
    for (int j = 1; j <= n; ++j) perm[p[j] - 1] = j - 1;
    return perm;
}

std::vector<int> greedy_with_swaps(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<std::pair<double, std::pair<int, int>>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pairs.push_back({a(i, j), {i, j}});
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> perm(n, -1);
    std::vector<char> col_used(n, 0);
    int left = n;
    for (const auto& [c, ij] : pairs) {
        if (left == 0) break;
        auto [i, j] = ij;
        if (perm[i] >= 0 || col_used[j]) continue;
        perm[i] = j;
        col_used[j] = 1;
        --left;
    }
    // verification: pairwise swaps until no improvement
    for (int sweep = 0; sweep < 4 * n; ++sweep) {
        bool improved = false;
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) {
                double now = a(i, perm[i]) + a(k, perm[k]);
                double sw = a(i, perm[k]) + a(k, perm[i]);
                if (sw < now - 1e-15 * std::max(1.0, now)) {
                    std::swap(perm[i], perm[k]);
                    improved = true;
                }
            }
        if (!improved) break;
    }
    return perm;
}

}  // namespace

std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost, int exact_limit) {
    if (cost.rows() != cost.cols()) throw ContractViolation("assignment cost must be square");
    if (cost.rows() == 0) return {};
    if (cost.rows() <= exact_limit) return hungarian(cost);
    return greedy_with_swaps(cost);
}

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& perm) {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += cost(static_cast<Eigen::Index>(i), perm[i]);
    return s;
}

}  // namespace hyperdecay
