#include "hyperdecay/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hyperdecay/assignment.hpp"
#include "hyperdecay/error.hpp"
#include "hyperdecay/parallel.hpp"

namespace hyperdecay {

cplx discriminant_of(std::span<const cplx> monic) {
    const int m = static_cast<int>(monic.size()) - 1;
    if (m < 2) throw ContractViolation("discriminant needs degree >= 2");
    const int size = 2 * m - 1;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
    // m-1 shifted rows of P, m shifted rows of P'
    for (int r = 0; r < m - 1; ++r)
        for (int k = 0; k <= m; ++k) s(r, r + k) = monic[static_cast<std::size_t>(k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k < m; ++k)
            s(m - 1 + r, r + k) = monic[static_cast<std::size_t>(k)] * static_cast<double>(m - k);
    cplx res = s.partialPivLu().determinant();
    const long long e = static_cast<long long>(m) * (m - 1) / 2;
    return (e % 2 == 0) ? res : -res;
}

cplx discriminant_at(const OperatorSymbol& sym, std::span<const double> xi) {
    if (sym.order() < 2) throw ContractViolation("discriminant_at needs m >= 2");
    auto c = tau_poly_at(sym, xi);
    return discriminant_of(c);
}

double discriminant_scale(int m, std::span<const double> xi) {
    double b = japanese_bracket(xi);
    return std::pow(b, static_cast<double>(m) * (m - 1));
}

double RootField::min_im(std::size_t node) const {
    double v = root(node, 0).imag();
    for (int k = 1; k < m; ++k) v = std::min(v, root(node, k).imag());
    return v;
}

namespace {

bool seed_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

RootField track_branches(const OperatorSymbol& sym, const FrequencyGrid& grid) {
    if (grid.size() == 0) throw ContractViolation("empty grid");
    if (grid.dim() != sym.dim()) throw ContractViolation("grid and symbol dimensions differ");
    const int m = sym.order();
    const std::size_t mm = static_cast<std::size_t>(m);
    const std::size_t N = grid.size();

    RootField f;
    f.grid = grid;
    f.m = m;
    std::vector<cplx> raw(N * mm);
    f.values.resize(N * mm);
    f.disc.assign(N, cplx(0.0));
    f.disc_scale.assign(N, 1.0);
    f.residual.assign(N, 0.0);

    parallel_chunks(N, 256, [&](std::size_t, std::size_t b, std::size_t e) {
        std::vector<double> xi(static_cast<std::size_t>(grid.dim()));
        for (std::size_t i = b; i < e; ++i) {
            grid.node(i, xi);
            auto c = tau_poly_at(sym, xi);
            RootSet rs = roots_at(c, xi);
            std::copy(rs.roots.begin(), rs.roots.end(), raw.begin() + static_cast<std::ptrdiff_t>(i * mm));
            f.residual[i] = rs.worst_residual();
            if (m >= 2) {
                f.disc[i] = discriminant_of(c);
                f.disc_scale[i] = discriminant_scale(m, xi);
            }
        }
    });

    // seed: largest |xi| node, first in flat order on ties
    std::size_t seed = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < N; ++i) {
        double r = grid.node_norm(i);
        if (r > best + 1e-14) {
            best = r;
            seed = i;
        }
    }
    f.seed = seed;
    std::vector<char> done(N, 0);
    {
        std::vector<cplx> s(raw.begin() + static_cast<std::ptrdiff_t>(seed * mm),
                            raw.begin() + static_cast<std::ptrdiff_t>((seed + 1) * mm));
        std::sort(s.begin(), s.end(), seed_less);
        std::copy(s.begin(), s.end(), f.values.begin() + static_cast<std::ptrdiff_t>(seed * mm));
        done[seed] = 1;
    }

    Eigen::MatrixXd cost(m, m);
    auto match = [&](std::size_t from, std::size_t to) {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) cost(a, b) = std::abs(f.root(from, a) - raw[to * mm + static_cast<std::size_t>(b)]);
        auto perm = min_cost_assignment(cost);
        for (int a = 0; a < m; ++a)
            f.values[to * mm + static_cast<std::size_t>(a)] = raw[to * mm + static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])];
        done[to] = 1;
    };

    // sweep along axis 0 through the seed, then along axis 1 from every
    // labelled node, and so on
    std::vector<std::size_t> frontier{seed};
    for (int ax = 0; ax < grid.dim(); ++ax) {
        std::vector<std::size_t> next;
        next.reserve(frontier.size() * grid.axis_size());
        for (std::size_t start : frontier) {
            next.push_back(start);
            for (int dir : {-1, 1}) {
                std::size_t cur = start, nb;
                while (grid.neighbor(cur, ax, dir, nb)) {
                    if (!done[nb]) match(cur, nb);
                    next.push_back(nb);
                    cur = nb;
                }
            }
        }
        frontier = std::move(next);
    }
    return f;
}

void write_root_field_csv(const RootField& field, std::ostream& os) {
    const int n = field.grid.dim();
    for (int d = 0; d < n; ++d) os << "xi_" << (d + 1) << ',';
    os << "branch,re_tau,im_tau,re_disc,im_disc\n";
    std::vector<double> xi(static_cast<std::size_t>(n));
    char buf[64];
    for (std::size_t i = 0; i < field.size(); ++i) {
        field.grid.node(i, xi);
        for (int k = 0; k < field.m; ++k) {
            for (double v : xi) {
                std::snprintf(buf, sizeof buf, "%.17g,", v);
                os << buf;
            }
            cplx t = field.root(i, k);
            std::snprintf(buf, sizeof buf, "%d,", k);
            os << buf;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,", t.real(), t.imag());
            os << buf;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", field.disc[i].real(), field.disc[i].imag());
            os << buf;
        }
    }
}

}  // namespace hyperdecay
