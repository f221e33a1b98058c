#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "hyperdecay/error.hpp"
#include "hyperdecay/grad.hpp"
#include "hyperdecay/models.hpp"

using namespace hyperdecay;

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace

TEST(WaveFamily, Symbol) {
    auto s = wave_family_symbol({2, 0.5, 3}, 2);
    EXPECT_EQ(s.order(), 2);
    EXPECT_EQ(s.dim(), 2);
    std::vector<double> xi{1.0, 2.0};
    auto c = tau_poly_at(s, xi);
    EXPECT_NEAR(std::abs(c[1] - cplx(0, -0.5)), 0, 1e-15);
    EXPECT_NEAR(std::abs(c[2] - cplx(-4 * 5 - 3, 0)), 0, 1e-13);
}

TEST(WaveFamily, RootsSolveTheSymbol) {
    const WaveFamilyParams ps[] = {{1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, -0.1, 5}, {1, 1, 1}, {2, 1, -1}, {0.5, 3, 0.1}};
    for (const auto& p : ps) {
        auto s = wave_family_symbol(p, 1);
        for (double x : {0.0, 0.25, 0.5, 1.0, 7.0}) {
            std::vector<double> xi{x};
            auto r = wave_family_roots(p, xi);
            for (cplx t : r) EXPECT_LT(std::abs(eval_symbol(s, t, xi)), 1e-12 * (1 + std::norm(t)));
            EXPECT_NEAR(r[0].imag() + r[1].imag(), p.delta, 1e-14);
        }
    }
    std::vector<double> xi{0.5};
    auto dbl = wave_family_roots({1, 1, 0}, xi);
    EXPECT_NEAR(std::abs(dbl[0] - dbl[1]), 0.0, 1e-15);
    EXPECT_NEAR(dbl[0].imag(), 0.5, 1e-15);
}

TEST(WaveFamily, Cases) {
    EXPECT_EQ(wave_family_case({1, 0, 0}), WaveCase::wave);
    EXPECT_EQ(wave_family_case({1, 0, 2}), WaveCase::klein_gordon);
    EXPECT_EQ(wave_family_case({1, 2, 0}), WaveCase::dissipative);
    EXPECT_EQ(wave_family_case({1, 2, 1}), WaveCase::exponential);
    EXPECT_EQ(wave_family_case({1, -1, 0}), WaveCase::no_decay);
    EXPECT_EQ(wave_family_case({1, 1, -1}), WaveCase::negative_mass_conditional);
    EXPECT_STREQ(to_string(WaveCase::negative_mass_conditional), "negative_mass_conditional");
    EXPECT_STREQ(to_string(WaveCase::klein_gordon), "klein_gordon");
}

TEST(Grad, SmallSystems) {
    auto g11 = grad_system(1, 1);
    ASSERT_EQ(g11.size(), 2);
    EXPECT_EQ(g11.A[0](0, 1), 1.0);
    EXPECT_EQ(g11.A[0](1, 0), 1.0);
    EXPECT_EQ(g11.B(0), 0.0);
    EXPECT_EQ(g11.B(1), 1.0);

    auto g12 = grad_system(1, 2);
    ASSERT_EQ(g12.size(), 3);
    Eigen::MatrixXd want(3, 3);
    want << 0, 1, 0, 1, 0, 2, 0, 1, 0;
    EXPECT_EQ(g12.A[0], want);

    auto g21 = grad_system(2, 1);
    ASSERT_EQ(g21.size(), 3);
    EXPECT_EQ(g21.basis[1], MultiIndex({1, 0}));
    EXPECT_EQ(g21.basis[2], MultiIndex({0, 1}));
    EXPECT_EQ(g21.B, Eigen::Vector3d(0, 1, 1));
    EXPECT_EQ(g21.A[0](0, 1), 1.0);
    EXPECT_EQ(g21.A[1](0, 2), 1.0);
    EXPECT_EQ(g21.A[0](0, 2), 0.0);
}

TEST(Grad, Sizes) {
    EXPECT_EQ(grad_basis_size(1, 5), 6);
    EXPECT_EQ(grad_basis_size(3, 4), 35);
    EXPECT_EQ(grad_basis_size(3, 40), 12341);
    EXPECT_THROW(grad_system(3, 40), SizeGuardError);
    EXPECT_THROW(grad_system(0, 2), ContractViolation);
    EXPECT_THROW(grad_symbol(grad_system(3, 10)), SizeGuardError);
}

TEST(Grad, SymmetrizableAndTrace) {
    for (auto [n, N] : {std::pair{1, 4}, std::pair{2, 3}, std::pair{3, 2}}) {
        auto g = grad_system(n, N);
        const int M = g.size();
        Eigen::VectorXd d(M);
        for (int a = 0; a < M; ++a) {
            double f = 1;
            for (int j = 0; j < n; ++j) f *= factorial(g.basis[static_cast<std::size_t>(a)][j]);
            d(a) = std::sqrt(f);
        }
        for (int j = 0; j < n; ++j) {
            Eigen::MatrixXd S = d.asDiagonal() * g.A[static_cast<std::size_t>(j)] * d.cwiseInverse().asDiagonal();
            EXPECT_LT((S - S.transpose()).norm(), 1e-12);
        }
        // sum of |alpha| over the basis is n * C(N + n, n + 1)
        double want = n * std::tgamma(N + n + 1.0) / (std::tgamma(n + 2.0) * std::tgamma(N));
        EXPECT_NEAR(g.B.sum(), want, 1e-9);
    }
}

TEST(Grad, OneOneIsTheDissipativeWave) {
    auto gs = grad_symbol(grad_system(1, 1));
    auto ws = wave_family_symbol({1, 1, 0}, 1);
    for (double x : {0.0, 0.3, 2.0, 11.0}) {
        std::vector<double> xi{x};
        auto a = tau_poly_at(gs, xi), b = tau_poly_at(ws, xi);
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LT(std::abs(a[k] - b[k]), 1e-12);
    }
    EXPECT_EQ(gs.to_string(), ws.to_string());
}

TEST(Grad, SymbolMatchesDeterminant) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (auto [n, N] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{2, 3}}) {
        auto g = grad_system(n, N);
        auto s = grad_symbol(g);
        EXPECT_EQ(s.order(), g.size());
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> xi;
            for (int j = 0; j < n; ++j) xi.push_back(u(rng));
            auto a = tau_poly_at(s, xi), b = grad_char_poly(g, xi);
            for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LT(std::abs(a[k] - b[k]), 1e-9 * (1 + std::abs(b[k])));
        }
    }
}

TEST(Grad, FaddeevLeverrierAgreesWithEigenvalues) {
    auto g = grad_system(2, 3);
    std::vector<double> xi{0.7, -0.4};
    auto X = grad_matrix(g, xi);
    auto c = faddeev_leverrier(X);
    Eigen::ComplexEigenSolver<CMatrix> es(X);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    auto from = poly_from_roots(ev);
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_LT(std::abs(c[k] - from[k]), 1e-9 * (1 + std::abs(from[k])));
}

TEST(Grad, MultiplicitiesAtZero) {
    for (auto [n, N] : {std::pair{1, 15}, std::pair{2, 5}, std::pair{3, 4}, std::pair{2, 18}}) {
        auto g = grad_system(n, N);
        ASSERT_LE(g.size(), 200);
        std::vector<double> xi(static_cast<std::size_t>(n), 0.0);
        auto rs = grad_dispersion_roots(g, xi);
        ASSERT_EQ(static_cast<int>(rs.roots.size()), g.size());
        std::map<int, int> count;
        for (cplx r : rs.roots) {
            int k = static_cast<int>(std::lround(r.imag()));
            EXPECT_NEAR(r.imag(), k, 1e-5);  // the 16-root polynomial path is ill conditioned
            EXPECT_NEAR(r.real(), 0.0, 1e-5);
            ++count[k];
        }
        for (int k = 0; k <= N; ++k) {
            int want = static_cast<int>(std::lround(std::tgamma(k + n) / (std::tgamma(k + 1.0) * std::tgamma(n))));
            EXPECT_EQ(count[k], want) << "n=" << n << " N=" << N << " k=" << k;
        }
    }
}

TEST(Grad, EigenPathResiduals) {
    auto g = grad_system(2, 6);
    ASSERT_GT(g.size(), 16);
    std::vector<double> xi{1.3, 0.2};
    auto rs = grad_dispersion_roots(g, xi);
    EXPECT_LT(rs.worst_residual(), 1e-12);
    for (cplx r : rs.roots) EXPECT_GE(r.imag(), -1e-10);
    for (std::size_t k = 1; k < rs.roots.size(); ++k) EXPECT_LE(rs.roots[k - 1].real(), rs.roots[k].real() + 1e-12);
}
