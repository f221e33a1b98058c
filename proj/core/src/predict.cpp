#include "hyperdecay/predict.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

const char* to_string(Region r) { return r == Region::large ? "large" : "bounded"; }

const char* location_name(const Location& l) {
    switch (l.index()) {
        case 0: return "separated";
        case 1: return "on_axis";
        case 2: return "asymptotic_to_axis";
        default: return "meets_axis";
    }
}

std::string hessian_name(const HessianClass& h) {
    if (std::holds_alternative<HessianNondegenerate>(h)) return "nondegenerate";
    if (auto* r = std::get_if<HessianRankDeficient>(&h)) return "rank_deficient(" + std::to_string(r->rank) + ")";
    return "unknown";
}

std::string convexity_name(const Convexity& c) {
    char buf[64];
    if (auto* s = std::get_if<ConvexitySatisfied>(&c)) {
        if (!s->gamma) return "satisfied";
        std::snprintf(buf, sizeof buf, "satisfied(gamma=%g)", *s->gamma);
        return buf;
    }
    if (auto* v = std::get_if<ConvexityViolated>(&c)) {
        std::snprintf(buf, sizeof buf, "violated(gamma0=%g)", v->gamma0);
        return buf;
    }
    return "not_assessed";
}

double lp_theta(double p, double q) {
    if (!(p >= 1.0 && p <= 2.0)) throw ContractViolation("p must lie in [1, 2]");
    const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
    if (std::abs(1.0 / p + iq - 1.0) > 1e-12) throw ContractViolation("p and q must be dual exponents");
    return 1.0 / p - iq;
}

bool slower(const DecayFactor& a, const DecayFactor& b, double theta) {
    const double tol = 1e-12;
    if (a.rate < b.rate - tol) return true;
    if (a.rate > b.rate + tol) return false;
    return a.exponent(theta) > b.exponent(theta) + tol;
}

std::size_t DecayPrediction::dominant(double theta) const {
    if (factors.empty()) throw ContractViolation("empty prediction");
    std::size_t best = 0;
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (slower(factors[i], factors[best], theta)) best = i;
    return best;
}

PredictionAt DecayPrediction::at(double p, double q) const {
    PredictionAt r;
    r.p = p;
    r.q = q;
    r.theta = lp_theta(p, q);
    r.factor = dominant(r.theta);
    const auto& f = factors[r.factor];
    r.exponent = f.exponent(r.theta);
    r.rate = f.rate;
    r.row = f.row;
    return r;
}

std::string DecayPrediction::symbolic() const {
    std::ostringstream os;
    os << "max(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        if (i) os << ", ";
        char buf[160];
        if (f.rate > 0) {
            std::snprintf(buf, sizeof buf, "<t>^(%g) exp(-%g t)", f.a, f.rate);
        } else {
            std::snprintf(buf, sizeof buf, "<t>^(%g %+g*(1/p-1/q))", f.a, f.b);
        }
        os << buf;
    }
    os << ")";
    return os.str();
}

namespace {

const char* kRowSeparated = "separated";
const char* kRowSeparatedMult = "separated_multiplicity";
const char* kRowDetHess = "det_hess";
const char* kRowRank = "rank_n_minus_1";
const char* kRowConvex = "convexity_gamma";
const char* kRowGamma0 = "gamma0";
const char* kRowMeets = "meets_axis";

// Power factor for an on-axis or asymptotic branch; rows in table order.
DecayFactor axis_factor(const BranchBehavior& b, int n, bool allow_convexity_gamma) {
    DecayFactor f;
    f.branch = b.branch;
    f.region = b.region;
    if (std::holds_alternative<HessianNondegenerate>(b.hessian)) {
        f.row = kRowDetHess;
        f.b = -0.5 * n;
        return f;
    }
    if (auto* r = std::get_if<HessianRankDeficient>(&b.hessian); r && r->rank == n - 1) {
        f.row = kRowRank;
        f.b = -0.5 * (n - 1);
        return f;
    }
    if (auto* s = std::get_if<ConvexitySatisfied>(&b.convexity); s && s->gamma) {
        if (allow_convexity_gamma) {
            f.row = kRowConvex;
            f.b = -(n - 1) / *s->gamma;
        } else {
            // gamma0 <= gamma, so -1/gamma is a valid (slower) substitute
            f.row = kRowGamma0;
            f.b = -1.0 / *s->gamma;
        }
        return f;
    }
    if (auto* v = std::get_if<ConvexityViolated>(&b.convexity)) {
        f.row = kRowGamma0;
        f.b = -1.0 / v->gamma0;
        return f;
    }
    throw MissingGeometryError(std::string("branch ") + std::to_string(b.branch) + " (" + to_string(b.region) +
                               ", " + location_name(b.location) +
                               "): no Hessian or convexity information for the matching table row");
}

}  // namespace

DecayPrediction predict_decay(std::span<const BranchBehavior> behaviors, int n, DerivativeOrder deriv) {
    DecayPrediction pred;
    pred.n = n;
    pred.deriv = deriv;
    for (const auto& b : behaviors) {
        if (b.multiplicity < 1) throw ContractViolation("multiplicity must be >= 1");
        const int L = b.multiplicity;
        if (auto* s = std::get_if<Separated>(&b.location)) {
            if (!(s->delta > 0)) throw ContractViolation("separated branch needs delta > 0");
            DecayFactor f;
            f.branch = b.branch;
            f.region = b.region;
            f.row = L > 1 ? kRowSeparatedMult : kRowSeparated;
            f.a = (b.region == Region::bounded) ? L - 1 : 0;
            f.rate = s->delta;
            pred.factors.push_back(f);
        } else if (std::holds_alternative<OnAxis>(b.location)) {
            pred.factors.push_back(axis_factor(b, n, true));
        } else if (std::holds_alternative<AsymptoticToAxis>(b.location)) {
            pred.factors.push_back(axis_factor(b, n, false));
        } else {
            const auto& ma = std::get<MeetsAxis>(b.location);
            if (!(ma.s > 0)) throw MissingGeometryError("meets-axis branch without a contact order");
            if (!(ma.codim >= 1)) throw MissingGeometryError("meets-axis branch without a zero-set codimension");
            DecayFactor f;
            f.branch = b.branch;
            f.region = b.region;
            f.row = kRowMeets;
            // space derivatives gain only when the zero set is the origin,
            // time derivatives only where Re tau = 0 as well
            double gain = 0.0;
            if (ma.at_origin) gain += deriv.alpha;
            if (ma.real_part_zero) gain += deriv.r * ma.s1;
            f.a = (L - 1) - gain / ma.s;
            f.b = -ma.codim / ma.s;
            pred.factors.push_back(f);
        }
    }
    return pred;
}

}  // namespace hyperdecay
