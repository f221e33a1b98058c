#include "hyperdecay/grad.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

namespace {

long binom(int a, int b) {
    long r = 1;
    for (int k = 1; k <= b; ++k) {
        r = r * (a - b + k) / k;
        if (r > 10 * grad_size_limit) return r;
    }
    return r;
}

void enumerate(int n, int degree, int pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (pos == n - 1) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (int k = degree; k >= 0; --k) {
        cur[pos] = k;
        enumerate(n, degree - k, pos + 1, cur, out);
    }
}

template <class T>
CMatrix build(const GradSystem& sys, std::span<const T> xi) {
    if (static_cast<int>(xi.size()) != sys.n) throw ContractViolation("xi has the wrong dimension");
    const int M = sys.size();
    CMatrix X = CMatrix::Zero(M, M);
    for (int a = 0; a < M; ++a) X(a, a) = cplx(0.0, sys.B(a));
    for (int j = 0; j < sys.n; ++j) X -= sys.A[static_cast<std::size_t>(j)].cast<cplx>() * cplx(xi[static_cast<std::size_t>(j)]);
    return X;
}

constexpr int eigen_path_above = 16;
constexpr double interpolation_work_limit = 2e8;  // samples * M^4

}  // namespace

long grad_basis_size(int n, int N) {
    if (n < 1 || N < 1) throw ContractViolation("Grad system needs n >= 1 and N >= 1");
    return binom(N + n, n);
}

GradSystem grad_system(int n, int N) {
    const long M = grad_basis_size(n, N);
    if (M > grad_size_limit)
        throw SizeGuardError("Grad system with " + std::to_string(M) + " moments exceeds the limit of " +
                             std::to_string(grad_size_limit));
    GradSystem s;
    s.n = n;
    s.N = N;
    MultiIndex cur(n);
    for (int d = 0; d <= N; ++d) enumerate(n, d, 0, cur, s.basis);
    std::map<MultiIndex, int> index;
    for (std::size_t i = 0; i < s.basis.size(); ++i) index[s.basis[i]] = static_cast<int>(i);

    const int Mi = s.size();
    s.B = Eigen::VectorXd::Zero(Mi);
    s.A.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(Mi, Mi));
    for (int col = 0; col < Mi; ++col) {
        const MultiIndex& a = s.basis[static_cast<std::size_t>(col)];
        s.B(col) = a.order();
        for (int j = 0; j < n; ++j) {
            auto& Aj = s.A[static_cast<std::size_t>(j)];
            if (a[j] > 0) {
                MultiIndex lo = a;
                lo[j] -= 1;
                Aj(index.at(lo), col) = a[j];
            }
            MultiIndex hi = a;
            hi[j] += 1;
            if (auto it = index.find(hi); it != index.end()) Aj(it->second, col) = 1.0;
        }
    }
    return s;
}

CMatrix grad_matrix(const GradSystem& sys, std::span<const double> xi) { return build(sys, xi); }
CMatrix grad_matrix(const GradSystem& sys, std::span<const cplx> xi) { return build(sys, xi); }

std::vector<cplx> faddeev_leverrier(const CMatrix& X) {
    const auto M = X.rows();
    if (M != X.cols() || M < 1) throw ContractViolation("square matrix required");
    std::vector<cplx> c(static_cast<std::size_t>(M + 1));
    c[0] = 1.0;
    CMatrix Mk = CMatrix::Identity(M, M);
    for (Eigen::Index k = 1; k <= M; ++k) {
        CMatrix XM = X * Mk;
        c[static_cast<std::size_t>(k)] = -XM.trace() / static_cast<double>(k);
        Mk = XM;
        Mk.diagonal().array() += c[static_cast<std::size_t>(k)];
    }
    return c;
}

std::vector<cplx> grad_char_poly(const GradSystem& sys, std::span<const double> xi) {
    return faddeev_leverrier(grad_matrix(sys, xi));
}

OperatorSymbol grad_symbol(const GradSystem& sys) {
    const int M = sys.size(), n = sys.n;
    // p_j has degree <= j <= M in each variable
    const int D = M + 1;
    long samples = 1;
    for (int k = 0; k < n; ++k) samples *= D;
    const double work = static_cast<double>(samples) * std::pow(static_cast<double>(M), 4);
    if (work > interpolation_work_limit)
        throw SizeGuardError("symbolic Grad polynomial too large to interpolate (M = " + std::to_string(M) + ")");

    // values on the torus xi_k = exp(2 pi i s_k / D)
    std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(samples));
    std::vector<cplx> xi(static_cast<std::size_t>(n));
    std::vector<int> s(static_cast<std::size_t>(n));
    const double w = 2.0 * std::numbers::pi / D;
    for (long idx = 0; idx < samples; ++idx) {
        long rem = idx;
        for (int k = 0; k < n; ++k) {
            s[static_cast<std::size_t>(k)] = static_cast<int>(rem % D);
            rem /= D;
            xi[static_cast<std::size_t>(k)] = std::polar(1.0, w * s[static_cast<std::size_t>(k)]);
        }
        vals[static_cast<std::size_t>(idx)] = faddeev_leverrier(grad_matrix(sys, std::span<const cplx>(xi)));
    }

    std::vector<SparsePoly> coeffs;
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int j = 1; j <= M; ++j) {
        SparsePoly pj(n);
        // inverse DFT for each exponent vector of total degree <= j
        for (long eidx = 0; eidx < samples; ++eidx) {
            long rem = eidx;
            int tot = 0;
            for (int k = 0; k < n; ++k) {
                e[static_cast<std::size_t>(k)] = static_cast<int>(rem % D);
                tot += e[static_cast<std::size_t>(k)];
                rem /= D;
            }
            if (tot > j) continue;
            cplx acc = 0.0;
            for (long idx = 0; idx < samples; ++idx) {
                long r2 = idx;
                long phase = 0;
                for (int k = 0; k < n; ++k) {
                    phase += static_cast<long>(e[static_cast<std::size_t>(k)]) * (r2 % D);
                    r2 /= D;
                }
                acc += vals[static_cast<std::size_t>(idx)][static_cast<std::size_t>(j)] *
                       std::polar(1.0, -w * static_cast<double>(phase % D));
            }
            acc /= static_cast<double>(samples);
            cplx rounded(std::round(acc.real()), std::round(acc.imag()));
            if (std::abs(acc - rounded) > 1e-3)
                throw NumericalError("Grad coefficient is not a Gaussian integer (deviation " +
                                     std::to_string(std::abs(acc - rounded)) + ")");
            if (rounded != cplx(0.0)) pj.add_term(MultiIndex(e), rounded);
        }
        coeffs.push_back(std::move(pj));
    }
    return OperatorSymbol(n, std::move(coeffs));
}

RootSet grad_dispersion_roots(const GradSystem& sys, std::span<const double> xi) {
    if (sys.size() <= eigen_path_above) return roots_at(grad_char_poly(sys, xi), xi);
    // characteristic coefficients overflow relative to the roots for large M
    CMatrix X = grad_matrix(sys, xi);
    Eigen::ComplexEigenSolver<CMatrix> es(X, true);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigenvalue iteration failed", 0.0);
    RootSet rs;
    rs.xi.assign(xi.begin(), xi.end());
    std::vector<std::pair<cplx, double>> pairs;
    const double scale = std::max(1.0, X.cwiseAbs().colwise().sum().maxCoeff());
    for (Eigen::Index k = 0; k < X.rows(); ++k) {
        cplx lam = es.eigenvalues()(k);
        auto v = es.eigenvectors().col(k);
        pairs.emplace_back(lam, (X * v - lam * v).norm() / (scale * v.norm()));
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return a.first.real() != b.first.real() ? a.first.real() < b.first.real() : a.first.imag() < b.first.imag();
    });
    for (auto& [lam, res] : pairs) {
        rs.roots.push_back(lam);
        rs.residuals.push_back(res);
    }
    rs.iterations = 0;
    return rs;
}

}  // namespace hyperdecay
