#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyperdecay {

// Extra axis nodes clustered geometrically around +-radius.
struct ShellRefinement {
    double radius = 0.0;
    double half_width = 0.0;
    int levels = 0;
};

class FrequencyGrid {
public:
    FrequencyGrid() = default;
    FrequencyGrid(int n, double extent, int points_per_axis, std::vector<ShellRefinement> shells = {});

    int dim() const { return n_; }
    double extent() const { return extent_; }
    int points_per_axis() const { return points_; }
    const std::vector<ShellRefinement>& shells() const { return shells_; }
    bool uniform() const { return shells_.empty(); }

    // base spacing 2R/(P-1); the refined axis is finer near the shells
    double spacing() const { return spacing_; }

    const std::vector<double>& axis() const { return axis_; }
    const std::vector<double>& axis_weights() const { return axis_w_; }
    std::size_t axis_size() const { return axis_.size(); }
    std::size_t size() const { return size_; }

    void node(std::size_t flat, std::span<double> out) const;
    std::vector<double> node(std::size_t flat) const;
    double node_norm(std::size_t flat) const;
    double weight(std::size_t flat) const;

    std::vector<std::size_t> unflatten(std::size_t flat) const;
    std::size_t flatten(std::span<const std::size_t> idx) const;
    std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

    // neighbour along an axis, false at the boundary
    bool neighbor(std::size_t flat, int axis, int dir, std::size_t& out) const;
    bool on_boundary(std::size_t flat) const;

    std::size_t nearest_axis_index(double x) const;

    FrequencyGrid refined(int factor) const;

private:
    int n_ = 0;
    double extent_ = 0.0;
    int points_ = 0;
    double spacing_ = 0.0;
    std::vector<ShellRefinement> shells_;
    std::vector<double> axis_;
    std::vector<double> axis_w_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

}  // namespace hyperdecay
