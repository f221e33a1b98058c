#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "hyperdecay/grid.hpp"
#include "hyperdecay/predict.hpp"
#include "hyperdecay/profile.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

enum class NormKind { l2_exact, linf_upper, grid_sample };
const char* to_string(NormKind k);

// Cauchy data: f^_j for the listed indices, zero elsewhere.
struct CauchyData {
    std::vector<std::pair<int, DataProfile>> terms;

    static CauchyData single(int j, DataProfile p) { return {{{j, std::move(p)}}}; }
};

struct QuadratureOptions {
    double vandermonde_threshold = 1e-6;
    std::size_t chunk = 512;      // nodes per reduction chunk, fixed for determinism
    double boundary_tol = 1e-6;   // under-resolution when boundary/max exceeds this
};

struct NormValue {
    double value = 0.0;
    double boundary_ratio = 0.0;
    bool under_resolved = false;
};

struct NormSeries {
    std::vector<double> times;
    std::vector<double> values;
    NormKind meaning = NormKind::linf_upper;
    DerivativeOrder deriv;
    double p = 1.0, q = 0.0;  // q = +inf for the sup surrogate
    double boundary_ratio = 0.0;
    bool under_resolved = false;
};

// integral of | |xi|^|alpha| sum_j d_t^r E_j f^_j | over the grid
NormValue linf_upper(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv,
                     const FrequencyGrid& grid, double t, const QuadratureOptions& opt = {});
// sqrt of the integral of the squared modulus (Plancherel, no 2 pi factors)
NormValue l2_exact(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv,
                   const FrequencyGrid& grid, double t, const QuadratureOptions& opt = {});

// One pass over the grid for all times.
NormSeries norm_series(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv,
                       const FrequencyGrid& grid, std::span<const double> times, NormKind kind,
                       const QuadratureOptions& opt = {});

// Columns t, value, meaning, r, alpha, p, q
void write_series_csv(const NormSeries& s, std::ostream& os);

std::vector<double> log_spaced(double a, double b, int count);

}  // namespace hyperdecay
