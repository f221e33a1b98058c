#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hyperdecay/error.hpp"
#include "hyperdecay/polyroots.hpp"
#include "hyperdecay/roots.hpp"
#include "hyperdecay/symbol.hpp"

using namespace hyperdecay;

namespace {

const cplx I(0, 1);

// distance between root multisets, brute force over permutations (m <= 7)
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    std::vector<int> perm(a.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    double best = 1e300;
    do {
        double w = 0;
        for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[static_cast<std::size_t>(perm[i])]));
        best = std::min(best, w);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST(RootsAt, Examples) {
    std::vector<cplx> a{1.0, 0.0, -1.0};
    EXPECT_LT(multiset_distance(roots_at(a).roots, {1.0, -1.0}), 1e-14);

    std::vector<cplx> b{1.0, -(1.0 + I), I};
    EXPECT_LT(multiset_distance(roots_at(b).roots, {1.0, I}), 1e-14);

    // double root of the dissipative wave at |xi| = 1/2
    std::vector<cplx> c{1.0, -I, -0.25};
    auto rc = roots_at(c);
    for (cplx r : rc.roots) EXPECT_LT(std::abs(r - 0.5 * I), 1e-7);
    EXPECT_LT(rc.worst_residual(), 1e-14);
}

TEST(RootsAt, ZeroRootsDeflated) {
    std::vector<cplx> c{1.0, -3.0, 2.0, 0.0, 0.0};
    auto r = roots_at(c);
    EXPECT_LT(multiset_distance(r.roots, {0.0, 0.0, 1.0, 2.0}), 1e-12);
}

TEST(RootsAt, Contract) {
    std::vector<cplx> notmonic{2.0, 1.0};
    EXPECT_THROW(roots_at(notmonic), ContractViolation);
    std::vector<cplx> constant{1.0};
    EXPECT_THROW(roots_at(constant), ContractViolation);
    std::vector<cplx> nan{1.0, std::nan("")};
    EXPECT_THROW(roots_at(nan), ContractViolation);
}

TEST(RootsAt, RandomRecovery) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int trial = 0; trial < 300; ++trial) {
        int m = 1 + trial % 7;
        std::vector<cplx> want;
        for (int k = 0; k < m; ++k) want.emplace_back(u(rng), u(rng));
        auto c = poly_from_roots(want);
        auto got = roots_at(c).roots;
        EXPECT_LT(multiset_distance(got, want), 1e-8) << "m=" << m;
    }
}

TEST(RootsAt, CoefficientIdentitiesAndResidualBound) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int trial = 0; trial < 300; ++trial) {
        int m = 2 + trial % 10;
        std::vector<cplx> c{1.0};
        for (int k = 0; k < m; ++k) c.emplace_back(u(rng), u(rng));
        auto rs = roots_at(c);
        cplx sum = 0.0, prod = 1.0;
        for (cplx r : rs.roots) {
            sum += r;
            prod *= r;
        }
        EXPECT_LE(std::abs(sum + c[1]), 1e-8 * std::max(1.0, std::abs(c[1])));
        cplx pm = (m % 2 ? -1.0 : 1.0) * c[static_cast<std::size_t>(m)];
        EXPECT_LE(std::abs(prod - pm), 1e-8 * std::max(1.0, std::abs(pm)));
        // backward error: residual small against sum |a_k| |z|^k
        for (std::size_t k = 0; k < rs.roots.size(); ++k) {
            double s = 0, z = std::abs(rs.roots[k]);
            for (cplx x : c) s = s * z + std::abs(x);
            EXPECT_LE(rs.residuals[k], 1e-12 * s);
        }
    }
}

TEST(RootsAt, GradSizedPolynomial) {
    // roots i*k, k = 0..15, the Grad pattern at the origin
    std::vector<cplx> want;
    for (int k = 0; k < 16; ++k) want.push_back(I * double(k));
    auto c = poly_from_roots(want);
    auto got = roots_at(c).roots;
    std::sort(got.begin(), got.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
    for (int k = 0; k < 16; ++k) EXPECT_NEAR(std::abs(got[static_cast<std::size_t>(k)] - want[static_cast<std::size_t>(k)]), 0.0, 1e-5);
}

TEST(Discriminant, QuadraticAndCubic) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        cplx b(u(rng), u(rng)), c(u(rng), u(rng));
        std::vector<cplx> q{1.0, b, c};
        EXPECT_LT(std::abs(discriminant_of(q) - (b * b - 4.0 * c)), 1e-12);
        // product of squared root differences
        std::vector<cplx> r{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        cplx want = 1.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) want *= (r[i] - r[j]) * (r[i] - r[j]);
        auto p = poly_from_roots(r);
        EXPECT_LT(std::abs(discriminant_of(p) - want), 1e-10 * std::max(1.0, std::abs(want)));
    }
    std::vector<cplx> sq = poly_from_roots(std::vector<cplx>{1.0 + I, 1.0 + I});
    EXPECT_LT(std::abs(discriminant_of(sq)), 1e-14);
}
