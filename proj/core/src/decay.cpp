#include "hyperdecay/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "hyperdecay/error.hpp"
#include "hyperdecay/multiplier.hpp"
#include "hyperdecay/parallel.hpp"

namespace hyperdecay {

const char* to_string(NormKind k) {
    switch (k) {
        case NormKind::l2_exact: return "L2_exact";
        case NormKind::linf_upper: return "Linf_upper";
        case NormKind::grid_sample: return "grid_sample";
    }
    return "?";
}

std::vector<double> log_spaced(double a, double b, int count) {
    if (!(a > 0) || !(b > a) || count < 2) throw ContractViolation("log_spaced needs 0 < a < b and count >= 2");
    std::vector<double> v(static_cast<std::size_t>(count));
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (count - 1));
    v.front() = a;
    v.back() = b;
    return v;
}

namespace {

struct ChunkSums {
    std::vector<double> sum;
    std::vector<double> max_all;
    std::vector<double> max_boundary;
};

NormSeries run(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv, const FrequencyGrid& grid,
               std::span<const double> times, NormKind kind, const QuadratureOptions& opt) {
    if (kind == NormKind::grid_sample) throw ContractViolation("grid samples come from the solver, not quadrature");
    if (grid.dim() != sym.dim()) throw ContractViolation("grid and symbol dimensions differ");
    if (deriv.r < 0 || deriv.alpha < 0) throw ContractViolation("derivative orders must be >= 0");
    if (data.terms.empty()) throw ContractViolation("no Cauchy data");
    for (const auto& [j, prof] : data.terms)
        if (j < 0 || j >= sym.order()) throw ContractViolation("Cauchy datum index out of range");
    for (double t : times)
        if (!(t >= 0)) throw ContractViolation("times must be >= 0");

    const std::size_t T = times.size();
    const std::size_t N = grid.size();
    const int m = sym.order();
    const std::size_t nchunks = chunk_count(N, opt.chunk);
    std::vector<ChunkSums> parts(nchunks);

    parallel_chunks(N, opt.chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
        ChunkSums cs{std::vector<double>(T, 0.0), std::vector<double>(T, 0.0), std::vector<double>(T, 0.0)};
        std::vector<double> xi(static_cast<std::size_t>(grid.dim()));
        std::vector<cplx> vals(static_cast<std::size_t>(m));
        std::vector<double> fh(static_cast<std::size_t>(m));
        for (std::size_t i = b; i < e; ++i) {
            grid.node(i, xi);
            bool any = false;
            std::fill(fh.begin(), fh.end(), 0.0);
            for (const auto& [j, prof] : data.terms) {
                fh[static_cast<std::size_t>(j)] += prof(xi);
                any = any || fh[static_cast<std::size_t>(j)] != 0.0;
            }
            if (!any) continue;
            const double w = grid.weight(i);
            const double gain = deriv.alpha == 0 ? 1.0 : std::pow(euclidean_norm(xi), deriv.alpha);
            const bool bnd = grid.on_boundary(i);
            MultiplierEvaluator ev(sym, xi, opt.vandermonde_threshold);
            for (std::size_t k = 0; k < T; ++k) {
                ev.evaluate(times[k], deriv.r, vals);
                cplx acc = 0.0;
                for (int j = 0; j < m; ++j) acc += vals[static_cast<std::size_t>(j)] * fh[static_cast<std::size_t>(j)];
                const double g = gain * std::abs(acc);
                if (!std::isfinite(g)) throw UnstableModeError("non-finite integrand", -1, 0.0);
                cs.sum[k] += w * (kind == NormKind::l2_exact ? g * g : g);
                cs.max_all[k] = std::max(cs.max_all[k], g);
                if (bnd) cs.max_boundary[k] = std::max(cs.max_boundary[k], g);
            }
        }
        parts[c] = std::move(cs);
    });

    NormSeries s;
    s.times.assign(times.begin(), times.end());
    s.values.assign(T, 0.0);
    s.meaning = kind;
    s.deriv = deriv;
    if (kind == NormKind::l2_exact) {
        s.p = 2.0;
        s.q = 2.0;
    } else {
        s.p = 1.0;
        s.q = std::numeric_limits<double>::infinity();
    }
    std::vector<double> mx(T, 0.0), mb(T, 0.0);
    for (const auto& cs : parts) {
        if (cs.sum.empty()) continue;
        for (std::size_t k = 0; k < T; ++k) {
            s.values[k] += cs.sum[k];
            mx[k] = std::max(mx[k], cs.max_all[k]);
            mb[k] = std::max(mb[k], cs.max_boundary[k]);
        }
    }
    for (std::size_t k = 0; k < T; ++k) {
        if (kind == NormKind::l2_exact) s.values[k] = std::sqrt(s.values[k]);
        if (mx[k] > 0) s.boundary_ratio = std::max(s.boundary_ratio, mb[k] / mx[k]);
    }
    s.under_resolved = s.boundary_ratio > opt.boundary_tol;
    return s;
}

NormValue single(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv, const FrequencyGrid& grid,
                 double t, NormKind kind, const QuadratureOptions& opt) {
    double ts[1] = {t};
    NormSeries s = run(sym, data, deriv, grid, ts, kind, opt);
    return {s.values[0], s.boundary_ratio, s.under_resolved};
}

}  // namespace

NormValue linf_upper(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv,
                     const FrequencyGrid& grid, double t, const QuadratureOptions& opt) {
    return single(sym, data, deriv, grid, t, NormKind::linf_upper, opt);
}

NormValue l2_exact(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv,
                   const FrequencyGrid& grid, double t, const QuadratureOptions& opt) {
    return single(sym, data, deriv, grid, t, NormKind::l2_exact, opt);
}

NormSeries norm_series(const OperatorSymbol& sym, const CauchyData& data, DerivativeOrder deriv,
                       const FrequencyGrid& grid, std::span<const double> times, NormKind kind,
                       const QuadratureOptions& opt) {
    return run(sym, data, deriv, grid, times, kind, opt);
}

void write_series_csv(const NormSeries& s, std::ostream& os) {
    os << "t,value,meaning,r,alpha,p,q\n";
    char buf[160];
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%d,%d,%g,", s.times[k], s.values[k], to_string(s.meaning),
                      s.deriv.r, s.deriv.alpha, s.p);
        os << buf << (std::isinf(s.q) ? std::string("inf") : std::to_string(static_cast<int>(s.q))) << '\n';
    }
}

}  // namespace hyperdecay
