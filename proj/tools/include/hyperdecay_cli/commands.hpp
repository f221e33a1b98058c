#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperdecay_cli/config.hpp"

namespace hyperdecay::cli {

struct Outcome {
    int exit_code = exit_ok;
    Json report;
    std::vector<std::filesystem::path> files;  // written, in order
};

inline constexpr const char* not_verifiable_reason = "not verifiable by damping surrogates (on-axis roots)";

// Each command writes into cfg.out and returns the report it wrote.
// Errors from the library propagate; run_command maps them to exit codes.
Outcome cmd_analyze(const RunConfig& cfg);
Outcome cmd_verify(const RunConfig& cfg);
Outcome cmd_solve(const RunConfig& cfg);
Outcome cmd_grad(int n, int N, const std::filesystem::path& out);

// analyze | verify | solve; prints one summary line per artifact to log
int run_command(const std::string& name, RunConfig cfg, std::ostream& log, std::ostream& err);
int run_grad(int n, int N, const std::filesystem::path& out, std::ostream& log, std::ostream& err);

// grid-sample sup norm of the inverse FFT of sum_j E_j f_j; same Fourier
// convention as linf_upper, which bounds it
NormSeries grid_sample_series(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv, double extent,
                              int points, std::span<const double> times);
// u on the periodic x grid, row-major, x_k = (k - points/2) * pi / extent
std::vector<cplx> grid_sample_field(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv,
                                    double extent, int points, double t);

}  // namespace hyperdecay::cli
