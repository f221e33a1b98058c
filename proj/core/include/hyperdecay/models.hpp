#pragma once

#include <array>
#include <span>

#include "hyperdecay/classify.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

// u_tt - c^2 Lap u + delta u_t + mu u = 0
struct WaveFamilyParams {
    double c = 1.0;
    double delta = 0.0;
    double mu = 0.0;
};

OperatorSymbol wave_family_symbol(const WaveFamilyParams& p, int n);
// {tau_+, tau_-} with the principal square root
std::array<cplx, 2> wave_family_roots(const WaveFamilyParams& p, std::span<const double> xi);

enum class WaveCase { wave, klein_gordon, dissipative, no_decay, exponential, negative_mass_conditional };
const char* to_string(WaveCase c);

WaveCase wave_family_case(const WaveFamilyParams& p);
// same label read off a computed classification
WaveCase wave_case_from_classification(const Classification& cls);

struct MatsumuraValue {
    double E0 = 0.0;
    double E1 = 0.0;
};
// u_tt - Lap u + u_t = 0; |xi| enters only through its norm
MatsumuraValue matsumura_multiplier(double xi_norm, double t);

}  // namespace hyperdecay
