#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hyperdecay/roots.hpp"

namespace hyperdecay {

using RealBranch = std::function<double(std::span<const double>)>;

// slot-th root at xi after sorting by (Re desc, Im desc)
RealBranch real_part_branch(const OperatorSymbol& sym, int slot);
// slot-th root at xi after sorting by (Im asc, Re asc)
std::vector<double> imag_slot_field(const RootField& field, int slot);
std::vector<cplx> imag_slot_roots(const RootField& field, int slot);
// slot-th root after sorting by (Re desc, Im desc)
std::vector<cplx> real_slot_roots(const RootField& field, int slot);
// Im of a tracked branch; branch < 0 selects the lowest Im root at each node
std::vector<double> branch_imag(const RootField& field, int branch);

struct ZeroSet {
    std::vector<std::vector<double>> points;
    std::vector<std::size_t> nodes;  // grid nodes with |Im| <= tol
    bool empty() const { return points.empty(); }
};

// Nodes with |Im| <= tol * <xi> plus linearly interpolated sign changes
// along grid edges. Points with |xi| < min_radius are dropped.
ZeroSet zero_set(const FrequencyGrid& grid, std::span<const double> im, double tol = 1e-8, double min_radius = 0.0);

struct ContactOptions {
    int shells = 8;
    double inner_spacings = 2.0;   // innermost shell at this many grid spacings
    double outer_fraction = 0.1;   // outermost shell at this fraction of R
    double on_axis_tol = 1e-8;
    double min_radius = 0.0;
};

struct ContactOrder {
    double s = 0.0, s1 = 0.0;
    double stderr_s = 0.0, stderr_s1 = 0.0;
    int shells = 0;
    std::vector<double> lower_dist, lower_im, upper_dist, upper_im;
};

ContactOrder contact_order_fit(const FrequencyGrid& grid, std::span<const double> im,
                               std::span<const std::vector<double>> zero_points, const ContactOptions& opt = {});
ContactOrder contact_order_fit(const RootField& field, std::span<const std::vector<double>> zero_points, int branch = -1,
                               const ContactOptions& opt = {});

struct HessianInfo {
    double det = 0.0;
    int rank = 0;
    std::vector<double> eigenvalues;
    std::vector<int> signs;  // -1, 0, +1 per eigenvalue
    double step = 0.0;
    double threshold = 0.0;
};

// Central differences of a real branch, step 1e-3 <xi> unless given.
HessianInfo hessian_at(const RealBranch& branch, std::span<const double> xi, double step = 0.0);
// Real part of the slot-th root; throws NearMultiplicityError if the
// stencil gets within disc_threshold of a multiplicity.
HessianInfo hessian_at(const OperatorSymbol& sym, std::span<const double> xi, int slot, double disc_threshold = 1e-8);

struct Theorem4Result {
    bool d_tau_ok = false;
    cplx d_tau = 0.0;
    int min_alpha = 0;
    double scaling_slope = 0.0;  // min over directions of d log|P(0, e w)| / d log e
    bool cross_check_ok = false;
};

Theorem4Result theorem4_check(const OperatorSymbol& sym);

}  // namespace hyperdecay
