#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hyperdecay/classify.hpp"
#include "hyperdecay/decay.hpp"
#include "hyperdecay/fit.hpp"
#include "hyperdecay/models.hpp"
#include "hyperdecay/report.hpp"

namespace hyperdecay::cli {

inline constexpr int config_schema_version = 1;

// exit codes
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numerical = 3;
inline constexpr int exit_inconclusive = 4;
inline constexpr int exit_fit = 5;

struct GridSpec {
    double extent = 0.0;  // 0: pick from the dimension / data
    int points = 0;
};

struct SolveSpec {
    int points = 256;          // FFT points per axis
    std::vector<double> snapshots{0.0, 10.0, 100.0};
};

struct RunConfig {
    // where the operator came from, echoed into the report
    Json operator_source;
    OperatorSymbol symbol;
    std::optional<WaveFamilyParams> wave;

    GridSpec classify_grid;
    GridSpec quadrature_grid;
    DataProfile profile = DataProfile::gaussian(1.0);
    int component = -1;  // -1: highest, E_{m-1}
    std::vector<PqPair> pq{{1.0, std::numeric_limits<double>::infinity()}, {2.0, 2.0}};
    std::vector<DerivativeOrder> derivs{{0, 0}};
    FitWindow window;
    int fit_samples = 25;
    int early_samples = 24;
    double tol = 0.15;
    ClassifyOptions classify;
    bool min_radius_set = false;
    SolveSpec solve;
    std::filesystem::path out = "hyperdecay_out";
    int threads = 0;

    int dim() const { return symbol.dim(); }
    FrequencyGrid classification_grid() const;
    FrequencyGrid quadrature() const;
    // resolved settings as JSON; its hash identifies the run
    Json canonical() const;
};

// Accepts a run config or a bare symbol document (detected by "terms").
// Relative operator file paths resolve against base_dir. Throws ConfigError.
RunConfig parse_config(const Json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// "1,inf" / "2,2"
PqPair parse_pq(const std::string& s);

struct Overrides {
    std::optional<std::filesystem::path> out;
    std::optional<int> threads;
    std::vector<PqPair> pq;
    std::optional<double> tol;
};

// env (HYPERDECAY_OUT, HYPERDECAY_THREADS) first, then flags
void apply_overrides(RunConfig& cfg, const Overrides& ov);

RunConfig wave_config(const WaveFamilyParams& p, int n);
RunConfig grad_config(int n, int N);

}  // namespace hyperdecay::cli
