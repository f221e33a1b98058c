#include "hyperdecay/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

const char* to_string(FitModel m) {
    switch (m) {
        case FitModel::power: return "power";
        case FitModel::exponential: return "exponential";
        case FitModel::power_times_exp: return "power_times_exp";
    }
    return "?";
}

std::vector<double> default_fit_times(double T, int count) { return log_spaced(0.5 * T, T, count); }

std::vector<double> plot_times(double T, int fit_count, int early_count) {
    auto late = default_fit_times(T, fit_count);
    std::vector<double> out;
    if (early_count > 0 && 0.5 < late.front()) {
        auto early = log_spaced(0.5, late.front(), early_count + 1);
        out.assign(early.begin(), early.end() - 1);
    }
    out.insert(out.end(), late.begin(), late.end());
    return out;
}

namespace {

struct Lsq {
    Eigen::VectorXd beta;
    Eigen::VectorXd stderr_;
    double rms = 0.0;
    bool ok = true;
};

Lsq solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    Lsq r;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-12);
    if (qr.rank() < X.cols()) {
        r.ok = false;
        return r;
    }
    r.beta = qr.solve(y);
    Eigen::VectorXd res = y - X * r.beta;
    const double rss = res.squaredNorm();
    const auto N = X.rows(), p = X.cols();
    r.rms = std::sqrt(rss / static_cast<double>(N));
    const double s2 = N > p ? rss / static_cast<double>(N - p) : 0.0;
    Eigen::MatrixXd cov = (X.transpose() * X).inverse() * s2;
    r.stderr_ = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    return r;
}

}  // namespace

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& values, FitWindow window,
                   double seed_rate) {
    if (times.size() != values.size()) throw ContractViolation("times and values differ in length");
    if (!(window.t_hi > window.t_lo)) throw ContractViolation("empty fit window");
    std::vector<double> t, lv;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window.t_lo * (1 - 1e-12) || times[i] > window.t_hi * (1 + 1e-12)) continue;
        if (!(values[i] > 0) || !std::isfinite(values[i]))
            throw DegenerateFitError("non-positive or non-finite value at t = " + std::to_string(times[i]));
        t.push_back(times[i]);
        lv.push_back(std::log(values[i]));
    }
    if (t.size() < 8) throw ContractViolation("fit window holds fewer than 8 samples");
    auto [lo, hi] = std::minmax_element(lv.begin(), lv.end());
    if (std::expm1(*hi - *lo) < 1e-14) throw DegenerateFitError("bounded, no decay");

    const auto N = static_cast<Eigen::Index>(t.size());
    Eigen::VectorXd y(N);
    Eigen::MatrixXd Xp(N, 2), Xe(N, 2), Xj(N, 3);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double ti = t[static_cast<std::size_t>(i)];
        y(i) = lv[static_cast<std::size_t>(i)];
        Xp(i, 0) = 1.0;
        Xp(i, 1) = std::log1p(ti);
        Xe(i, 0) = 1.0;
        Xe(i, 1) = -ti;
        Xj.row(i) << 1.0, std::log1p(ti), -ti;
    }

    DecayFit f;
    f.window = window;
    f.samples = t.size();
    Lsq P = solve(Xp, y), E = solve(Xe, y);
    f.rms_power = P.rms;
    f.rms_exponential = E.rms;
    const bool power_wins = P.rms <= E.rms;
    const double best = std::min(P.rms, E.rms);
    if (best <= 1e-3) {
        if (power_wins) {
            f.model = FitModel::power;
            f.offset = P.beta(0);
            f.exponent = P.beta(1);
            f.stderr_exponent = P.stderr_(1);
            f.rms = P.rms;
        } else {
            f.model = FitModel::exponential;
            f.offset = E.beta(0);
            f.rate = E.beta(1);
            f.stderr_rate = E.stderr_(1);
            f.rms = E.rms;
        }
        return f;
    }

    f.model = FitModel::power_times_exp;
    // rescale columns so the QR rank test is meaningful
    Eigen::VectorXd scale = Xj.colwise().norm().transpose();
    Lsq J = solve(Xj * scale.cwiseInverse().asDiagonal(), y);
    if (J.ok) {
        f.offset = J.beta(0) / scale(0);
        f.exponent = J.beta(1) / scale(1);
        f.rate = J.beta(2) / scale(2);
        f.stderr_exponent = J.stderr_(1) / scale(1);
        f.stderr_rate = J.stderr_(2) / scale(2);
        f.rms = J.rms;
    } else {
        // rate fixed at the seed, fit the power
        Eigen::VectorXd y2 = y + seed_rate * (-Xe.col(1));
        Lsq S = solve(Xp, y2);
        f.offset = S.beta(0);
        f.exponent = S.beta(1);
        f.rate = seed_rate;
        f.stderr_exponent = S.stderr_(1);
        f.rms = S.rms;
    }
    return f;
}

DecayFit fit_decay(const NormSeries& series, FitWindow window, double seed_rate) {
    return fit_decay(series.times, series.values, window, seed_rate);
}

Verification verify_prediction(const DecayPrediction& pred, const DecayFit& fit, double p, double q, double tol) {
    Verification v;
    v.fitted_model = fit.model;
    v.fitted_exponent = fit.exponent;
    v.fitted_rate = fit.rate;
    if (pred.empty()) {
        v.diagnostic = "no prediction";
        return v;
    }
    PredictionAt at = pred.at(p, q);
    v.predicted_exponent = at.exponent;
    v.predicted_rate = at.rate;
    v.row = at.row;
    char buf[200];
    if (at.rate > 0) {
        if (fit.model == FitModel::power) {
            std::snprintf(buf, sizeof buf, "exponential prediction (rate %.4g) against a power fit (%.4g)", at.rate,
                          fit.exponent);
            v.diagnostic = buf;
            return v;
        }
        v.pass = fit.rate >= at.rate - tol;
        v.better_than_predicted = fit.rate > at.rate + tol;
        if (!v.pass) {
            std::snprintf(buf, sizeof buf, "fitted rate %.4g below predicted %.4g", fit.rate, at.rate);
            v.diagnostic = buf;
        }
        return v;
    }
    if (fit.model != FitModel::power) {
        std::snprintf(buf, sizeof buf, "power prediction (%.4g) against a %s fit (rate %.4g)", at.exponent,
                      to_string(fit.model), fit.rate);
        v.diagnostic = buf;
        return v;
    }
    const double d = fit.exponent - at.exponent;
    if (std::abs(d) <= tol) {
        v.pass = true;
    } else if (d < -tol) {
        v.pass = true;
        v.better_than_predicted = true;
    } else {
        std::snprintf(buf, sizeof buf, "fitted exponent %.4g slower than predicted %.4g", fit.exponent, at.exponent);
        v.diagnostic = buf;
    }
    return v;
}

}  // namespace hyperdecay
