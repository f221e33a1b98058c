#pragma once

#include <span>
#include <string>
#include <vector>

namespace hyperdecay {

// Radial Fourier-side data profile f^(xi).
class DataProfile {
public:
    enum class Kind { gaussian, annulus, ball, table };

    static DataProfile gaussian(double width);
    // vanishes for |xi| <= r_inner; smoothing = 0 gives the sharp indicator
    static DataProfile annulus(double r_inner, double r_outer, double smoothing);
    static DataProfile ball(double radius);
    // piecewise linear in |xi|, zero past the last radius
    static DataProfile table(std::vector<double> radii, std::vector<double> values);

    Kind kind() const { return kind_; }
    double operator()(std::span<const double> xi) const;
    double radial(double r) const;

    // radius past which |f^| < 1e-10 (7 / width for the gaussian)
    double support_radius() const;
    // discontinuous profiles make quadrature converge slowly
    bool smooth() const;

    double width() const { return a_; }
    double r_inner() const { return a_; }
    double r_outer() const { return b_; }
    double smoothing() const { return c_; }
    double radius() const { return a_; }
    const std::vector<double>& table_radii() const { return tr_; }
    const std::vector<double>& table_values() const { return tv_; }

    std::string describe() const;

private:
    Kind kind_ = Kind::gaussian;
    double a_ = 1.0, b_ = 0.0, c_ = 0.0;
    std::vector<double> tr_, tv_;
};

}  // namespace hyperdecay
