#include "hyperdecay/models.hpp"

#include <cmath>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

OperatorSymbol wave_family_symbol(const WaveFamilyParams& p, int n) {
    if (!(p.c > 0)) throw ContractViolation("wave speed must be > 0");
    SparsePoly p1 = SparsePoly::constant(n, cplx(0.0, -p.delta));
    SparsePoly p2 = SparsePoly::norm_squared(n, -p.c * p.c) + SparsePoly::constant(n, -p.mu);
    return OperatorSymbol(n, {p1, p2});
}

std::array<cplx, 2> wave_family_roots(const WaveFamilyParams& p, std::span<const double> xi) {
    const double r = euclidean_norm(xi);
    cplx rad = std::sqrt(cplx(p.c * p.c * r * r + p.mu - 0.25 * p.delta * p.delta, 0.0));
    cplx mid(0.0, 0.5 * p.delta);
    return {mid + rad, mid - rad};
}

const char* to_string(WaveCase c) {
    switch (c) {
        case WaveCase::wave: return "wave";
        case WaveCase::klein_gordon: return "klein_gordon";
        case WaveCase::dissipative: return "dissipative";
        case WaveCase::no_decay: return "no_decay";
        case WaveCase::exponential: return "exponential";
        case WaveCase::negative_mass_conditional: return "negative_mass_conditional";
    }
    return "?";
}

WaveCase wave_family_case(const WaveFamilyParams& p) {
    if (p.delta < 0) return WaveCase::no_decay;
    if (p.mu < 0) return WaveCase::negative_mass_conditional;
    if (p.delta == 0) return p.mu == 0 ? WaveCase::wave : WaveCase::klein_gordon;
    return p.mu == 0 ? WaveCase::dissipative : WaveCase::exponential;
}

WaveCase wave_case_from_classification(const Classification& cls) {
    if (cls.stability.kind == StabilityKind::unstable) {
        // decay survives once the data avoid a ball, i.e. the outer shell is fine
        return cls.stability.shell_min_im >= -1e-8 ? WaveCase::negative_mass_conditional : WaveCase::no_decay;
    }
    bool all_on_axis = !cls.behaviors.empty(), all_separated = !cls.behaviors.empty();
    bool large_separated = false, bounded_meets = false, rank_deficient = false;
    for (const auto& b : cls.behaviors) {
        const bool on = std::holds_alternative<OnAxis>(b.location);
        const bool sep = std::holds_alternative<Separated>(b.location);
        if (b.region == Region::large) {
            all_on_axis = all_on_axis && on;
            large_separated = large_separated || sep;
            if (std::holds_alternative<HessianRankDeficient>(b.hessian)) rank_deficient = true;
        } else {
            bounded_meets = bounded_meets || std::holds_alternative<MeetsAxis>(b.location);
        }
        all_separated = all_separated && sep;
    }
    if (all_separated) return WaveCase::exponential;
    if (all_on_axis) return rank_deficient ? WaveCase::wave : WaveCase::klein_gordon;
    if (large_separated && bounded_meets) return WaveCase::dissipative;
    throw NumericalError("classification does not match a wave-family case");
}

MatsumuraValue matsumura_multiplier(double xi_norm, double t) {
    if (!(t >= 0)) throw ContractViolation("t must be >= 0");
    const double d2 = 0.25 * (1.0 - 4.0 * xi_norm * xi_norm);  // squared half-gap, sign picks the branch
    const double damp = std::exp(-0.5 * t);
    double c, s;  // cosh(dt), sinh(dt)/d with their trigonometric continuations
    if (std::abs(4.0 * d2) < 1e-8) {
        // confluent limit with the first few corrections
        const double z = d2 * t * t;
        c = 1.0 + z / 2.0 + z * z / 24.0 + z * z * z / 720.0;
        s = t * (1.0 + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0);
    } else if (d2 > 0) {
        const double d = std::sqrt(d2);
        c = std::cosh(d * t);
        s = std::sinh(d * t) / d;
    } else {
        const double w = std::sqrt(-d2);
        c = std::cos(w * t);
        s = std::sin(w * t) / w;
    }
    return {damp * (c + 0.5 * s), damp * s};
}

}  // namespace hyperdecay
