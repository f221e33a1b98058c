#include <fftw3.h>

#include <functional>
#include <memory>

#include "hyperdecay/error.hpp"
#include "hyperdecay/multiplier.hpp"
#include "hyperdecay_cli/commands.hpp"

namespace hyperdecay::cli {

namespace {

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

// Calls visit(k, u) for each time with u centred on x = 0.
void sample_fields(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv, double extent,
                   int points, std::span<const double> times,
                   const std::function<void(std::size_t, const std::vector<cplx>&)>& visit) {
    const int n = sym.dim();
    if (n < 1 || n > 2) throw ContractViolation("grid samples support n = 1 or 2");
    if (points < 8 || points % 2) throw ContractViolation("grid samples need an even number of points >= 8");
    if (!(extent > 0)) throw ContractViolation("extent must be > 0");
    for (double t : times)
        if (!(t >= 0)) throw ContractViolation("times must be >= 0");
    const std::size_t N = static_cast<std::size_t>(points);
    const std::size_t total = n == 1 ? N : N * N;
    const double dxi = 2 * extent / points;
    const int m = sym.order();

    std::vector<MultiplierEvaluator> ev;
    std::vector<double> gain(total), fh(total * static_cast<std::size_t>(m), 0.0);
    ev.reserve(total);
    std::vector<double> xi(static_cast<std::size_t>(n));
    auto freq = [&](std::size_t k) {
        const long kk = k < N / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(N);
        return static_cast<double>(kk) * dxi;
    };
    for (std::size_t i = 0; i < total; ++i) {
        xi[0] = freq(n == 1 ? i : i / N);
        if (n == 2) xi[1] = freq(i % N);
        ev.emplace_back(sym, xi);
        gain[i] = deriv.alpha == 0 ? 1.0 : std::pow(euclidean_norm(xi), deriv.alpha);
        for (const auto& [j, prof] : data.terms) fh[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] += prof(xi);
    }

    std::unique_ptr<fftw_complex, FftwFree> in(fftw_alloc_complex(total)), out(fftw_alloc_complex(total));
    int dims[2] = {points, points};
    fftw_plan plan = fftw_plan_dft(n, dims, in.get(), out.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
    const double scale = n == 1 ? dxi : dxi * dxi;
    std::vector<cplx> vals(static_cast<std::size_t>(m)), u(total);
    for (std::size_t k = 0; k < times.size(); ++k) {
        for (std::size_t i = 0; i < total; ++i) {
            cplx acc = 0.0;
            const double* f = &fh[i * static_cast<std::size_t>(m)];
            bool any = false;
            for (int j = 0; j < m; ++j) any = any || f[j] != 0.0;
            if (any) {
                ev[i].evaluate(times[k], deriv.r, vals);
                for (int j = 0; j < m; ++j) acc += vals[static_cast<std::size_t>(j)] * f[j];
            }
            acc *= gain[i];
            in.get()[i][0] = acc.real();
            in.get()[i][1] = acc.imag();
        }
        fftw_execute(plan);
        // shift so index N/2 is x = 0
        for (std::size_t i = 0; i < total; ++i) {
            std::size_t src;
            if (n == 1) {
                src = (i + N / 2) % N;
            } else {
                const std::size_t a = (i / N + N / 2) % N, b = (i % N + N / 2) % N;
                src = a * N + b;
            }
            u[i] = cplx(out.get()[src][0], out.get()[src][1]) * scale;
        }
        visit(k, u);
    }
    fftw_destroy_plan(plan);
}

}  // namespace

NormSeries grid_sample_series(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv, double extent,
                              int points, std::span<const double> times) {
    NormSeries s;
    s.times.assign(times.begin(), times.end());
    s.values.assign(times.size(), 0.0);
    s.meaning = NormKind::grid_sample;
    s.deriv = deriv;
    s.p = 1.0;
    s.q = std::numeric_limits<double>::infinity();
    sample_fields(sym, data, deriv, extent, points, times, [&](std::size_t k, const std::vector<cplx>& u) {
        double mx = 0.0;
        for (const auto& v : u) mx = std::max(mx, std::abs(v));
        s.values[k] = mx;
    });
    return s;
}

std::vector<cplx> grid_sample_field(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv,
                                    double extent, int points, double t) {
    std::vector<cplx> field;
    std::vector<double> one{t};
    sample_fields(sym, data, deriv, extent, points, one, [&](std::size_t, const std::vector<cplx>& u) { field = u; });
    return field;
}

}  // namespace hyperdecay::cli
