#include "hyperdecay/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hyperdecay/error.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

namespace {

double psi(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }

// C-infinity step: 0 below 0, 1 above 1
double smooth_step(double x) {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    double a = psi(x), b = psi(1.0 - x);
    return a / (a + b);
}

}  // namespace

DataProfile DataProfile::gaussian(double width) {
    if (!(width > 0)) throw ContractViolation("gaussian width must be > 0");
    DataProfile d;
    d.kind_ = Kind::gaussian;
    d.a_ = width;
    return d;
}

DataProfile DataProfile::annulus(double r_inner, double r_outer, double smoothing) {
    if (!(r_inner >= 0) || !(r_outer > r_inner) || !(smoothing >= 0) || 2 * smoothing > r_outer - r_inner)
        throw ContractViolation("annulus needs 0 <= r_inner < r_outer and 2 smoothing <= r_outer - r_inner");
    DataProfile d;
    d.kind_ = Kind::annulus;
    d.a_ = r_inner;
    d.b_ = r_outer;
    d.c_ = smoothing;
    return d;
}

DataProfile DataProfile::ball(double radius) {
    if (!(radius > 0)) throw ContractViolation("ball radius must be > 0");
    DataProfile d;
    d.kind_ = Kind::ball;
    d.a_ = radius;
    return d;
}

DataProfile DataProfile::table(std::vector<double> radii, std::vector<double> values) {
    if (radii.size() < 2 || radii.size() != values.size()) throw ContractViolation("table needs >= 2 matching points");
    if (radii.front() < 0 || !std::is_sorted(radii.begin(), radii.end()) ||
        std::adjacent_find(radii.begin(), radii.end()) != radii.end())
        throw ContractViolation("table radii must be increasing and >= 0");
    for (double v : values)
        if (!std::isfinite(v)) throw ContractViolation("table values must be finite");
    DataProfile d;
    d.kind_ = Kind::table;
    d.tr_ = std::move(radii);
    d.tv_ = std::move(values);
    return d;
}

double DataProfile::radial(double r) const {
    switch (kind_) {
        case Kind::gaussian: return std::exp(-0.5 * r * r * a_ * a_);
        case Kind::annulus:
            if (r <= a_ || r >= b_) return 0.0;
            if (c_ == 0.0) return 1.0;
            return smooth_step((r - a_) / c_) * smooth_step((b_ - r) / c_);
        case Kind::ball: return r <= a_ ? 1.0 : 0.0;
        case Kind::table: {
            if (r < tr_.front() || r > tr_.back()) return 0.0;
            auto it = std::upper_bound(tr_.begin(), tr_.end(), r);
            if (it == tr_.end()) return tv_.back();
            std::size_t i = static_cast<std::size_t>(it - tr_.begin());
            double w = (r - tr_[i - 1]) / (tr_[i] - tr_[i - 1]);
            return (1 - w) * tv_[i - 1] + w * tv_[i];
        }
    }
    return 0.0;
}

double DataProfile::operator()(std::span<const double> xi) const { return radial(euclidean_norm(xi)); }

double DataProfile::support_radius() const {
    switch (kind_) {
        case Kind::gaussian: return 7.0 / a_;
        case Kind::annulus: return b_;
        case Kind::ball: return a_;
        case Kind::table: return tr_.back();
    }
    return 0.0;
}

bool DataProfile::smooth() const {
    return kind_ == Kind::gaussian || (kind_ == Kind::annulus && c_ > 0);
}

std::string DataProfile::describe() const {
    char buf[128];
    switch (kind_) {
        case Kind::gaussian: std::snprintf(buf, sizeof buf, "gaussian(width=%g)", a_); break;
        case Kind::annulus: std::snprintf(buf, sizeof buf, "annulus(%g, %g, smoothing=%g)", a_, b_, c_); break;
        case Kind::ball: std::snprintf(buf, sizeof buf, "ball(%g)", a_); break;
        case Kind::table: std::snprintf(buf, sizeof buf, "table(%zu points)", tr_.size()); break;
    }
    return buf;
}

}  // namespace hyperdecay
