#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "hyperdecay/assignment.hpp"
#include "hyperdecay/clusters.hpp"
#include "hyperdecay/models.hpp"
#include "hyperdecay/polyroots.hpp"
#include "hyperdecay/roots.hpp"

using namespace hyperdecay;

namespace {

const cplx I(0, 1);

double min_dist_to(std::span<const cplx> set, cplx z) {
    double d = 1e300;
    for (cplx s : set) d = std::min(d, std::abs(s - z));
    return d;
}

}  // namespace

TEST(Assignment, HungarianMatchesBruteForce) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + trial % 7;
        Eigen::MatrixXd c(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) c(i, j) = u(rng);
        std::vector<int> p(static_cast<std::size_t>(m));
        std::iota(p.begin(), p.end(), 0);
        double best = 1e300;
        do best = std::min(best, assignment_cost(c, p));
        while (std::next_permutation(p.begin(), p.end()));
        auto got = min_cost_assignment(c);
        EXPECT_NEAR(assignment_cost(c, got), best, 1e-12);
    }
}

TEST(Assignment, GreedyPathIsAPermutation) {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    Eigen::MatrixXd c(30, 30);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) c(i, j) = std::abs(i - j) + 0.1 * u(rng);
    auto p = min_cost_assignment(c);
    std::vector<int> s = p;
    std::sort(s.begin(), s.end());
    for (int i = 0; i < 30; ++i) EXPECT_EQ(s[static_cast<std::size_t>(i)], i);
    // near-diagonal costs: the identity is optimal
    EXPECT_LE(assignment_cost(c, p), 30 * 0.1 + 1e-12);
}

TEST(Discriminant, SymbolExamples) {
    auto d = wave_family_symbol({1, 1, 0}, 2);
    std::vector<double> xi{0.3, 0.4};  // |xi| = 1/2
    EXPECT_LT(std::abs(discriminant_at(d, xi)), 1e-15);
    std::vector<double> x2{1.0, 0.0};
    EXPECT_LT(std::abs(discriminant_at(d, x2) - 3.0), 1e-14);

    auto w = wave_family_symbol({1, 0, 0}, 1);
    std::vector<double> x3{1.5};
    EXPECT_LT(std::abs(discriminant_at(w, x3) - 9.0), 1e-13);
}

TEST(TrackBranches, DissipativeMatchesClosedForm) {
    WaveFamilyParams p{1, 1, 0};
    auto sym = wave_family_symbol(p, 1);
    FrequencyGrid g(1, 2.0, 2049);
    auto f = track_branches(sym, g);
    double worst = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto xi = g.node(i);
        if (std::abs(std::abs(xi[0]) - 0.5) < 1e-3) continue;  // double root
        auto want = wave_family_roots(p, xi);
        for (cplx w : want) worst = std::max(worst, min_dist_to(f.roots(i), w));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(TrackBranches, KleinGordonBranchesStayApart) {
    WaveFamilyParams p{1, 0, 1};
    auto sym = wave_family_symbol(p, 1);
    FrequencyGrid g(1, 5.0, 401);
    auto f = track_branches(sym, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_GE(std::abs(f.root(i, 0) - f.root(i, 1)), 2.0 - 1e-12);
        auto want = wave_family_roots(p, g.node(i));
        // labels never swap: compare against the closed form with a fixed sign
        EXPECT_LT(std::min(std::abs(f.root(i, 0) - want[0]), std::abs(f.root(i, 0) - want[1])), 1e-12);
        if (i > 0) EXPECT_LT(std::abs(f.root(i, 0) - f.root(i - 1, 0)), 2 * g.spacing());
    }
    EXPECT_TRUE(multiplicity_clusters(f, 0.05).empty());
}

TEST(TrackBranches, ContinuityInTwoDimensions) {
    auto sym = wave_family_symbol({1, 0, 1}, 2);
    FrequencyGrid g(2, 3.0, 61);
    auto f = track_branches(sym, g);
    std::size_t nb;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (int ax = 0; ax < 2; ++ax)
            if (g.neighbor(i, ax, +1, nb))
                for (int k = 0; k < 2; ++k) EXPECT_LT(std::abs(f.root(i, k) - f.root(nb, k)), 2 * g.spacing());
}

TEST(TrackBranches, GridInvariants) {
    // residual, multiset, coefficient identities and the symbol bound
    for (auto sym : {wave_family_symbol({1, 1, 0}, 2), wave_family_symbol({2, 0.3, 1}, 2),
                     wave_family_symbol({1, 1, -1}, 2)}) {
        FrequencyGrid g(2, 4.0, 41);
        auto f = track_branches(sym, g);
        double bound = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto xi = g.node(i);
            auto c = tau_poly_at(sym, xi);
            double r = euclidean_norm(xi);
            EXPECT_LE(f.residual[i], 1e-9 * std::max(1.0, r * r));
            auto direct = roots_at(c, xi).roots;
            for (cplx d : direct) EXPECT_LT(min_dist_to(f.roots(i), d), 1e-8 * std::max(1.0, r));
            cplx s = f.root(i, 0) + f.root(i, 1), p = f.root(i, 0) * f.root(i, 1);
            EXPECT_LE(std::abs(s + c[1]), 1e-8 * std::max(1.0, std::abs(c[1])));
            EXPECT_LE(std::abs(p - c[2]), 1e-8 * std::max(1.0, std::abs(c[2])));
            for (int k = 0; k < 2; ++k) bound = std::max(bound, std::abs(f.root(i, k)) / japanese_bracket(xi));
        }
        EXPECT_LT(bound, 3.0);
    }
}

TEST(TrackBranches, PrincipalConvergence) {
    // Klein-Gordon: |tau - phi| ~ 1/(2|xi|), K = 0, m = 2 so slope <= -0.8
    auto sym = wave_family_symbol({1, 0, 1}, 1);
    std::vector<double> lx, ly;
    for (double r = 10; r <= 100; r *= 1.2) {
        std::vector<double> xi{r};
        auto rs = roots_at(tau_poly_at(sym, xi), xi).roots;
        std::vector<cplx> phi{r, -r};
        double worst = 0;
        for (cplx t : rs) worst = std::max(worst, min_dist_to(phi, t));
        lx.push_back(std::log(r));
        ly.push_back(std::log(worst));
    }
    double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    EXPECT_LE(sxy / sxx, -0.8);
}

TEST(TrackBranches, DiscriminantZeroMeansRepeatedRoot) {
    auto sym = wave_family_symbol({1, 1, 0}, 1);
    FrequencyGrid g(1, 1.0, 401);  // contains +-1/2 exactly
    auto f = track_branches(sym, g);
    int hits = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (std::abs(f.disc[i]) >= 1e-12 * f.disc_scale[i]) continue;
        ++hits;
        EXPECT_LE(std::abs(f.root(i, 0) - f.root(i, 1)), 1e-4 * japanese_bracket(g.node(i)));
    }
    EXPECT_EQ(hits, 2);
}

TEST(Clusters, DissipativeOneDimension) {
    auto sym = wave_family_symbol({1, 1, 0}, 1);
    FrequencyGrid g(1, 2.0, 401);
    auto f = track_branches(sym, g);
    auto cl = multiplicity_clusters(f, 0.05);
    ASSERT_EQ(cl.size(), 2u);
    for (const auto& c : cl) {
        EXPECT_EQ(c.L, 2);
        EXPECT_EQ(c.codim.rounded, 1);
        EXPECT_NEAR(std::abs(c.representative[0]), 0.5, 2 * g.spacing());
        // min over the whole |disc| < 0.05 band, below the 1/2 at the double root
        EXPECT_GT(c.min_im, 0.35);
        EXPECT_LE(c.min_im, 0.5 + 1e-12);
    }
}

TEST(Clusters, DissipativeCircle) {
    auto sym = wave_family_symbol({1, 1, 0}, 2);
    FrequencyGrid g(2, 1.5, 151);
    auto f = track_branches(sym, g);
    auto cl = multiplicity_clusters(f, 0.05);
    ASSERT_EQ(cl.size(), 1u);
    EXPECT_EQ(cl[0].L, 2);
    EXPECT_NEAR(cl[0].codim.value, 1.0, 0.2);
    EXPECT_NEAR(euclidean_norm(cl[0].representative), 0.5, 2 * g.spacing());
}

TEST(Clusters, CodimOfPointInPlane) {
    FrequencyGrid g(2, 1.0, 101);
    std::vector<std::vector<double>> pts{{0.0, 0.0}};
    auto c = estimate_codim(g, pts);
    EXPECT_EQ(c.rounded, 2);
    EXPECT_EQ(c.eps.size(), 3u);
}

TEST(RootFieldCsv, Columns) {
    auto sym = wave_family_symbol({1, 1, 0}, 2);
    FrequencyGrid g(2, 1.0, 3);
    auto f = track_branches(sym, g);
    std::ostringstream os;
    write_root_field_csv(f, os);
    std::string s = os.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "xi_1,xi_2,branch,re_tau,im_tau,re_disc,im_disc");
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 9 * 2);
}
