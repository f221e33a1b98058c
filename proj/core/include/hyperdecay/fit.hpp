#pragma once

#include <string>
#include <vector>

#include "hyperdecay/decay.hpp"
#include "hyperdecay/predict.hpp"

namespace hyperdecay {

enum class FitModel { power, exponential, power_times_exp };
const char* to_string(FitModel m);

struct FitWindow {
    double t_lo = 100.0;
    double t_hi = 200.0;
};

// log v = offset + exponent log(1+t) - rate t
struct DecayFit {
    FitModel model = FitModel::power;
    double exponent = 0.0;
    double offset = 0.0;
    double rate = 0.0;
    double stderr_exponent = 0.0;
    double stderr_rate = 0.0;
    double rms = 0.0;
    double rms_power = 0.0;
    double rms_exponential = 0.0;
    FitWindow window;
    std::size_t samples = 0;
};

// [T/2, T] with count log-spaced samples
std::vector<double> default_fit_times(double T = 200.0, int count = 25);
// the fit samples plus earlier points from 0.5 for plotting
std::vector<double> plot_times(double T = 200.0, int fit_count = 25, int early_count = 24);

// Power and exponential fits by least squares; the better one wins if its
// rms log residual is below 1e-3, otherwise power times exponential.
// seed_rate is used when the joint fit is ill-conditioned.
DecayFit fit_decay(const NormSeries& series, FitWindow window, double seed_rate = 0.0);
DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& values, FitWindow window,
                   double seed_rate = 0.0);

struct Verification {
    bool pass = false;
    bool better_than_predicted = false;
    bool applicable = true;
    double predicted_exponent = 0.0;
    double predicted_rate = 0.0;
    double fitted_exponent = 0.0;
    double fitted_rate = 0.0;
    FitModel fitted_model = FitModel::power;
    std::string row;
    std::string diagnostic;
};

Verification verify_prediction(const DecayPrediction& pred, const DecayFit& fit, double p, double q, double tol);

}  // namespace hyperdecay
