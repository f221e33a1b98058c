#include "hyperdecay/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

FrequencyGrid::FrequencyGrid(int n, double extent, int points_per_axis, std::vector<ShellRefinement> shells)
    : n_(n), extent_(extent), points_(points_per_axis), shells_(std::move(shells)) {
    if (n_ < 1) throw ContractViolation("grid dimension must be >= 1");
    if (!(extent_ > 0.0) || !std::isfinite(extent_)) throw ContractViolation("grid extent must be positive");
    if (points_ < 2) throw ContractViolation("points_per_axis must be >= 2");
    spacing_ = 2.0 * extent_ / (points_ - 1);

    axis_.reserve(static_cast<std::size_t>(points_));
    for (int i = 0; i < points_; ++i) axis_.push_back(-extent_ + spacing_ * i);
    axis_.back() = extent_;
    if (points_ % 2 == 1) axis_[static_cast<std::size_t>(points_ / 2)] = 0.0;

    for (const auto& s : shells_) {
        if (!(s.radius >= 0.0) || !(s.half_width > 0.0) || s.levels < 0)
            throw ContractViolation("invalid shell refinement");
        for (double sign : {-1.0, 1.0}) {
            double c = sign * s.radius;
            std::vector<double> pts{c};
            double h = s.half_width;
            for (int k = 0; k <= s.levels; ++k, h *= 0.5) {
                pts.push_back(c - h);
                pts.push_back(c + h);
            }
            for (double x : pts)
                if (x > -extent_ && x < extent_) axis_.push_back(x);
        }
    }
    std::sort(axis_.begin(), axis_.end());
    std::vector<double> dedup;
    dedup.reserve(axis_.size());
    const double merge = 1e-12 * std::max(1.0, extent_);
    for (double x : axis_)
        if (dedup.empty() || x - dedup.back() > merge) dedup.push_back(x);
    axis_ = std::move(dedup);

    const std::size_t na = axis_.size();
    axis_w_.assign(na, 0.0);
    for (std::size_t i = 0; i + 1 < na; ++i) {
        double h = axis_[i + 1] - axis_[i];
        axis_w_[i] += 0.5 * h;
        axis_w_[i + 1] += 0.5 * h;
    }

    strides_.assign(static_cast<std::size_t>(n_), 1);
    size_ = 1;
    for (int d = n_ - 1; d >= 0; --d) {
        strides_[static_cast<std::size_t>(d)] = size_;
        if (size_ > std::numeric_limits<std::size_t>::max() / na) throw ContractViolation("grid too large");
        size_ *= na;
    }
}

std::vector<std::size_t> FrequencyGrid::unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(static_cast<std::size_t>(n_));
    for (int d = 0; d < n_; ++d) {
        idx[static_cast<std::size_t>(d)] = flat / strides_[static_cast<std::size_t>(d)];
        flat %= strides_[static_cast<std::size_t>(d)];
    }
    return idx;
}

std::size_t FrequencyGrid::flatten(std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (int d = 0; d < n_; ++d) f += idx[static_cast<std::size_t>(d)] * strides_[static_cast<std::size_t>(d)];
    return f;
}

void FrequencyGrid::node(std::size_t flat, std::span<double> out) const {
    for (int d = 0; d < n_; ++d) {
        std::size_t i = flat / strides_[static_cast<std::size_t>(d)];
        flat %= strides_[static_cast<std::size_t>(d)];
        out[static_cast<std::size_t>(d)] = axis_[i];
    }
}

std::vector<double> FrequencyGrid::node(std::size_t flat) const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    node(flat, x);
    return x;
}

double FrequencyGrid::node_norm(std::size_t flat) const {
    double s = 0.0;
    for (int d = 0; d < n_; ++d) {
        std::size_t i = flat / strides_[static_cast<std::size_t>(d)];
        flat %= strides_[static_cast<std::size_t>(d)];
        s += axis_[i] * axis_[i];
    }
    return std::sqrt(s);
}

double FrequencyGrid::weight(std::size_t flat) const {
    double w = 1.0;
    for (int d = 0; d < n_; ++d) {
        std::size_t i = flat / strides_[static_cast<std::size_t>(d)];
        flat %= strides_[static_cast<std::size_t>(d)];
        w *= axis_w_[i];
    }
    return w;
}

bool FrequencyGrid::neighbor(std::size_t flat, int axis, int dir, std::size_t& out) const {
    std::size_t st = strides_[static_cast<std::size_t>(axis)];
    std::size_t i = (flat / st) % axis_.size();
    if (dir < 0) {
        if (i == 0) return false;
        out = flat - st;
    } else {
        if (i + 1 >= axis_.size()) return false;
        out = flat + st;
    }
    return true;
}

bool FrequencyGrid::on_boundary(std::size_t flat) const {
    for (int d = 0; d < n_; ++d) {
        std::size_t i = (flat / strides_[static_cast<std::size_t>(d)]) % axis_.size();
        if (i == 0 || i + 1 == axis_.size()) return true;
    }
    return false;
}

std::size_t FrequencyGrid::nearest_axis_index(double x) const {
    auto it = std::lower_bound(axis_.begin(), axis_.end(), x);
    if (it == axis_.end()) return axis_.size() - 1;
    std::size_t i = static_cast<std::size_t>(it - axis_.begin());
    if (i > 0 && std::abs(axis_[i - 1] - x) < std::abs(axis_[i] - x)) return i - 1;
    return i;
}

FrequencyGrid FrequencyGrid::refined(int factor) const {
    return FrequencyGrid(n_, extent_, (points_ - 1) * factor + 1, shells_);
}

}  // namespace hyperdecay
