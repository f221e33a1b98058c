#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hyperdecay/convexity.hpp"

namespace hyperdecay {

enum class Region { large, bounded };
const char* to_string(Region r);

struct Separated {
    double delta = 0.0;
};
struct OnAxis {};
struct AsymptoticToAxis {
    double slope = 0.0;  // log-log slope of Im tau on the outer shell
};
struct MeetsAxis {
    double s = 0.0;
    double s1 = 0.0;
    double codim = 1.0;       // l, used as an integer-valued estimate
    bool at_origin = false;   // zero set is {0}
    bool real_part_zero = false;
};
using Location = std::variant<Separated, OnAxis, AsymptoticToAxis, MeetsAxis>;

struct HessianNondegenerate {};
struct HessianRankDeficient {
    int rank = 0;
};
struct HessianUnknown {};
using HessianClass = std::variant<HessianNondegenerate, HessianRankDeficient, HessianUnknown>;

struct BranchBehavior {
    int branch = 0;
    Region region = Region::large;
    Location location = OnAxis{};
    HessianClass hessian = HessianUnknown{};
    Convexity convexity = ConvexityNotAssessed{};
    int multiplicity = 1;  // L
    std::string note;
};

const char* location_name(const Location& l);
std::string hessian_name(const HessianClass& h);
std::string convexity_name(const Convexity& c);

struct DerivativeOrder {
    int r = 0;      // time derivatives
    int alpha = 0;  // |alpha|, space derivatives
};

// t-power a + b * theta with theta = 1/p - 1/q, times exp(-rate t)
struct DecayFactor {
    int branch = 0;
    Region region = Region::large;
    std::string row;
    double a = 0.0;
    double b = 0.0;
    double rate = 0.0;

    double exponent(double theta) const { return a + b * theta; }
};

struct PredictionAt {
    double p = 0.0, q = 0.0, theta = 0.0;
    double exponent = 0.0;
    double rate = 0.0;
    std::string row;
    std::size_t factor = 0;
};

struct DecayPrediction {
    int n = 1;
    DerivativeOrder deriv;
    std::vector<DecayFactor> factors;

    bool empty() const { return factors.empty(); }
    // index of the slowest factor at theta
    std::size_t dominant(double theta) const;
    PredictionAt at(double p, double q) const;
    std::string symbolic() const;
};

// theta = 1/p - 1/q; q = infinity allowed. Checks 1 <= p <= 2 and 1/p + 1/q = 1.
double lp_theta(double p, double q);

// Decision tables for the large-frequency and bounded regions.
DecayPrediction predict_decay(std::span<const BranchBehavior> behaviors, int n, DerivativeOrder deriv = {});

// slower-than comparison used for the combined K(t)
bool slower(const DecayFactor& a, const DecayFactor& b, double theta);

}  // namespace hyperdecay
