#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hyperdecay/classify.hpp"
#include "hyperdecay/error.hpp"
#include "hyperdecay/geometry.hpp"
#include "hyperdecay/grad.hpp"
#include "hyperdecay/models.hpp"

using namespace hyperdecay;

namespace {

const double inf = std::numeric_limits<double>::infinity();

RootField field_of(const WaveFamilyParams& p, int n, double R, int P) {
    return track_branches(wave_family_symbol(p, n), FrequencyGrid(n, R, P));
}

BranchBehavior on_axis(HessianClass h, Convexity c = ConvexityNotAssessed{}) {
    BranchBehavior b;
    b.location = OnAxis{};
    b.hessian = h;
    b.convexity = c;
    return b;
}

BranchBehavior meets(double s, double codim, int L = 1, bool origin = true) {
    BranchBehavior b;
    b.region = Region::bounded;
    b.location = MeetsAxis{s, s, codim, origin, true};
    b.multiplicity = L;
    return b;
}

}  // namespace

TEST(Stability, DissipativeIsStronglyStable) {
    auto v = stability_scan(field_of({1, 1, 0}, 1, 10, 401));
    EXPECT_EQ(v.kind, StabilityKind::strongly_stable);
    EXPECT_TRUE(v.zero_set_only_origin);
    EXPECT_NEAR(v.shell_min_im, 0.5, 1e-9);
    EXPECT_NEAR(v.min_im, 0.0, 1e-12);
}

TEST(Stability, NegativeDampingIsUnstable) {
    auto v = stability_scan(field_of({1, -0.1, 5}, 1, 10, 401));
    EXPECT_EQ(v.kind, StabilityKind::unstable);
    EXPECT_FALSE(v.witnesses.empty());
    EXPECT_NEAR(v.min_im, -0.05, 1e-9);
    EXPECT_FALSE(v.is_stable());
}

TEST(Stability, KleinGordonIsOnAxis) {
    auto v = stability_scan(field_of({1, 0, 1}, 2, 5, 51));
    EXPECT_EQ(v.kind, StabilityKind::on_axis);
    EXPECT_TRUE(v.shell_on_axis);
    EXPECT_TRUE(v.is_stable());
}

TEST(Stability, NegativeMassNeedsTheCutoff) {
    auto f = field_of({1, 1, -1}, 1, 5, 501);
    EXPECT_EQ(stability_scan(f).kind, StabilityKind::unstable);
    StabilityOptions o;
    o.min_radius = 1.0;
    auto v = stability_scan(f, o);
    EXPECT_NE(v.kind, StabilityKind::unstable);
    EXPECT_GE(v.min_im, -1e-8);
}

TEST(ContactOrder, SyntheticPowers) {
    FrequencyGrid g(1, 2.0, 2049);
    for (double s : {1.0, 2.0, 4.0}) {
        std::vector<double> im(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) im[i] = std::pow(std::abs(g.node(i)[0] - 0.3), s);
        std::vector<std::vector<double>> z{{0.3}};
        auto c = contact_order_fit(g, im, z);
        EXPECT_NEAR(c.s, s, 0.2);
        EXPECT_NEAR(c.s1, s, 0.2);
        EXPECT_GE(c.shells, 3);
    }
}

TEST(ContactOrder, SyntheticPowersInThePlane) {
    FrequencyGrid g(2, 2.0, 257);
    for (double s : {1.0, 2.0, 4.0}) {
        std::vector<double> im(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) im[i] = std::pow(euclidean_norm(g.node(i)), s);
        std::vector<std::vector<double>> z{{0.0, 0.0}};
        EXPECT_NEAR(contact_order_fit(g, im, z).s, s, 0.2);
    }
}

TEST(ContactOrder, DissipativeAtOrigin) {
    auto f = field_of({1, 1, 0}, 1, 2, 2049);
    std::vector<std::vector<double>> z{{0.0}};
    auto c = contact_order_fit(f, z);
    EXPECT_NEAR(c.s, 2.0, 0.2);
    EXPECT_NEAR(c.s1, 2.0, 0.2);
}

TEST(ContactOrder, NegativeMassSphere) {
    auto f = field_of({1, 1, -1}, 1, 2, 2049);
    ContactOptions o;
    o.min_radius = 1.0;
    std::vector<std::vector<double>> z{{1.0}, {-1.0}};
    EXPECT_NEAR(contact_order_fit(f, z, -1, o).s, 1.0, 0.2);
}

TEST(ContactOrder, KleinGordonIsOnAxis) {
    auto f = field_of({1, 0, 1}, 1, 2, 401);
    std::vector<std::vector<double>> z{{0.0}};
    EXPECT_THROW(contact_order_fit(f, z), OnAxisError);
}

TEST(Hessian, Examples) {
    auto kg = wave_family_symbol({1, 0, 1}, 2);
    std::vector<double> x{1.0, 0.0};
    auto h = hessian_at(kg, x, 0);
    EXPECT_EQ(h.rank, 2);
    EXPECT_NE(h.det, 0.0);
    // Re-sorted slot 0 is +sqrt(|xi|^2+1): eigenvalues 1/2^(3/2) and 1/sqrt(2)
    EXPECT_NEAR(h.eigenvalues[0], std::pow(2.0, -1.5), 1e-5);
    EXPECT_NEAR(h.eigenvalues[1], 1 / std::sqrt(2.0), 1e-5);

    auto w = hessian_at(wave_family_symbol({1, 0, 0}, 2), x, 0);
    EXPECT_EQ(w.rank, 1);
    EXPECT_EQ(w.det, 0.0);

    RealBranch lin = [](std::span<const double> xi) { return xi[0]; };
    auto l = hessian_at(lin, x);
    EXPECT_EQ(l.rank, 0);
    EXPECT_EQ(l.det, 0.0);
}

TEST(Hessian, StencilNearMultiplicity) {
    auto d = wave_family_symbol({1, 1, 0}, 2);
    std::vector<double> x{0.5, 0.0};
    EXPECT_THROW(hessian_at(d, x, 0), NearMultiplicityError);
}

TEST(Convexity, CirclesHaveGammaTwo) {
    for (auto p : {WaveFamilyParams{1, 0, 0}, WaveFamilyParams{1, 0, 1}}) {
        RealBranch f = real_part_branch(wave_family_symbol(p, 2), 0);
        std::vector<double> x1{1.0, 0.0}, x2{2.0, 0.0};
        std::vector<double> levels{f(x1), f(x2)};
        auto scan = convexity_scan(f, 2, 3.0, levels);
        auto* s = std::get_if<ConvexitySatisfied>(&scan.result);
        ASSERT_NE(s, nullptr);
        ASSERT_TRUE(s->gamma.has_value());
        EXPECT_EQ(*s->gamma, 2.0);
    }
}

TEST(Convexity, QuarticHasGammaFour) {
    RealBranch f = [](std::span<const double> x) { return std::pow(x[0], 4) + std::pow(x[1], 4); };
    std::vector<double> levels{1.0};
    auto scan = convexity_scan(f, 2, 1.5, levels);
    auto* s = std::get_if<ConvexitySatisfied>(&scan.result);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(*s->gamma, 4.0);
}

TEST(Convexity, InflectionIsViolated) {
    // level curves y = x^3 + c have an inflection at x = 0
    RealBranch f = [](std::span<const double> x) { return x[1] - x[0] * x[0] * x[0]; };
    std::vector<double> levels{0.0, 0.3};
    auto scan = convexity_scan(f, 2, 1.0, levels);
    auto* v = std::get_if<ConvexityViolated>(&scan.result);
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(v->gamma0, 3.0);
}

TEST(Convexity, EmptyLevelsAndOtherDimensions) {
    RealBranch f = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
    std::vector<double> levels{100.0};
    auto scan = convexity_scan(f, 2, 1.0, levels);
    auto* s = std::get_if<ConvexitySatisfied>(&scan.result);
    ASSERT_NE(s, nullptr);
    EXPECT_FALSE(s->gamma.has_value());
    EXPECT_TRUE(std::holds_alternative<ConvexityNotAssessed>(convexity_scan(f, 3, 1.0, levels).result));
}

TEST(Predict, TableRows) {
    std::vector<BranchBehavior> wave{on_axis(HessianRankDeficient{2})};
    auto pw = predict_decay(wave, 3).at(1, inf);
    EXPECT_EQ(pw.row, "rank_n_minus_1");
    EXPECT_DOUBLE_EQ(pw.exponent, -1.0);

    std::vector<BranchBehavior> kg{on_axis(HessianNondegenerate{})};
    auto pk = predict_decay(kg, 3).at(1, inf);
    EXPECT_EQ(pk.row, "det_hess");
    EXPECT_DOUBLE_EQ(pk.exponent, -1.5);

    for (int n : {1, 2, 3}) {
        std::vector<BranchBehavior> d{meets(2.0, n)};
        EXPECT_DOUBLE_EQ(predict_decay(d, n).at(1, inf).exponent, -0.5 * n);
    }

    std::vector<BranchBehavior> cv{on_axis(HessianRankDeficient{0}, ConvexitySatisfied{3.0})};
    EXPECT_EQ(predict_decay(cv, 2).at(1, inf).row, "convexity_gamma");
    EXPECT_NEAR(predict_decay(cv, 2).at(1, inf).exponent, -1.0 / 3.0, 1e-15);

    std::vector<BranchBehavior> g0{on_axis(HessianRankDeficient{0}, ConvexityViolated{3.0})};
    EXPECT_EQ(predict_decay(g0, 2).at(1, inf).row, "gamma0");

    BranchBehavior sep;
    sep.region = Region::bounded;
    sep.location = Separated{0.5};
    sep.multiplicity = 3;
    std::vector<BranchBehavior> sm{sep};
    auto ps = predict_decay(sm, 1).at(2, 2);
    EXPECT_EQ(ps.row, "separated_multiplicity");
    EXPECT_DOUBLE_EQ(ps.exponent, 2.0);
    EXPECT_DOUBLE_EQ(ps.rate, 0.5);
}

TEST(Predict, MissingGeometry) {
    std::vector<BranchBehavior> b{on_axis(HessianUnknown{})};
    EXPECT_THROW(predict_decay(b, 2), MissingGeometryError);
    std::vector<BranchBehavior> m{meets(0.0, 1)};
    EXPECT_THROW(predict_decay(m, 1), MissingGeometryError);
}

TEST(Predict, DerivativeGains) {
    std::vector<BranchBehavior> d{meets(2.0, 1)};
    EXPECT_DOUBLE_EQ(predict_decay(d, 1, {1, 0}).at(1, inf).exponent, -1.5);
    EXPECT_DOUBLE_EQ(predict_decay(d, 1, {0, 1}).at(1, inf).exponent, -1.0);
    EXPECT_DOUBLE_EQ(predict_decay(d, 1, {0, 1}).at(2, 2).exponent, -0.5);
}

TEST(Predict, ThetaProperties) {
    EXPECT_DOUBLE_EQ(lp_theta(1, inf), 1.0);
    EXPECT_DOUBLE_EQ(lp_theta(2, 2), 0.0);
    EXPECT_NEAR(lp_theta(1.5, 3), 1.0 / 3.0, 1e-15);
    EXPECT_THROW(lp_theta(3, 1.5), ContractViolation);
    EXPECT_THROW(lp_theta(1.5, 2), ContractViolation);

    std::vector<std::vector<BranchBehavior>> cases{
        {on_axis(HessianNondegenerate{})},
        {on_axis(HessianRankDeficient{1})},
        {on_axis(HessianRankDeficient{0}, ConvexitySatisfied{4.0})},
        {meets(2.0, 1, 2)},
        {meets(1.0, 1), on_axis(HessianNondegenerate{})},
    };
    for (const auto& c : cases) {
        auto pred = predict_decay(c, 2);
        // b-part vanishes at p = q = 2
        for (const auto& f : pred.factors) EXPECT_DOUBLE_EQ(f.exponent(0.0), f.a);
        // non-increasing in theta
        double prev = inf;
        for (double p : {2.0, 1.8, 1.5, 1.25, 1.0}) {
            double q = p == 1.0 ? inf : p / (p - 1);
            double e = pred.at(p, q).exponent;
            EXPECT_LE(e, prev + 1e-15);
            prev = e;
        }
        // single-factor predictions interpolate linearly between (2,2) and (1,inf)
        if (pred.factors.size() == 1) {
            double e1 = pred.at(1, inf).exponent, e2 = pred.at(2, 2).exponent;
            double th = lp_theta(1.25, 5);
            EXPECT_NEAR(pred.at(1.25, 5).exponent, th * e1 + (1 - th) * e2, 1e-14);
        }
    }
}

TEST(OriginCheck, DissipativeAndGrad) {
    for (auto sym : {wave_family_symbol({1, 1, 0}, 1), wave_family_symbol({1, 1, 0}, 2),
                     grad_symbol(grad_system(1, 1)), grad_symbol(grad_system(1, 3))}) {
        auto r = theorem4_check(sym);
        EXPECT_TRUE(r.d_tau_ok);
        EXPECT_EQ(r.min_alpha, 2);
        EXPECT_TRUE(r.cross_check_ok);
        EXPECT_NEAR(r.scaling_slope, 2.0, 0.05);
    }
    auto d = theorem4_check(wave_family_symbol({1, 1, 0}, 1));
    EXPECT_NEAR(std::abs(d.d_tau - cplx(0, -1)), 0.0, 1e-15);
}

TEST(Classify, GoldenWaveFamily) {
    struct Row {
        WaveFamilyParams p;
        int n;
        WaveCase want;
    };
    const Row rows[] = {
        {{1, 0, 0}, 2, WaveCase::wave},
        {{1, 0, 1}, 2, WaveCase::klein_gordon},
        {{1, 1, 0}, 1, WaveCase::dissipative},
        {{1, -0.1, 5}, 1, WaveCase::no_decay},
        {{1, 1, 1}, 1, WaveCase::exponential},
        {{1, 1, -1}, 1, WaveCase::negative_mass_conditional},
    };
    for (const auto& r : rows) {
        EXPECT_EQ(wave_family_case(r.p), r.want);
        FrequencyGrid g = r.n == 1 ? FrequencyGrid(1, 20, 801) : FrequencyGrid(2, 6, 121);
        auto cls = classify_symbol(wave_family_symbol(r.p, r.n), g);
        EXPECT_EQ(wave_case_from_classification(cls), r.want) << to_string(r.want);
    }
}

TEST(Classify, DominantRows) {
    FrequencyGrid g2(2, 6, 121);
    auto w = classify_symbol(wave_family_symbol({1, 0, 0}, 2), g2);
    EXPECT_EQ(w.prediction().at(1, inf).row, "rank_n_minus_1");
    EXPECT_DOUBLE_EQ(w.prediction().at(1, inf).exponent, -0.5);
    auto k = classify_symbol(wave_family_symbol({1, 0, 1}, 2), g2);
    EXPECT_EQ(k.prediction().at(1, inf).row, "det_hess");
    EXPECT_DOUBLE_EQ(k.prediction().at(1, inf).exponent, -1.0);

    auto d = classify_symbol(wave_family_symbol({1, 1, 0}, 1), FrequencyGrid(1, 20, 801));
    auto at = d.prediction().at(1, inf);
    EXPECT_EQ(at.row, "meets_axis");
    EXPECT_NEAR(at.exponent, -0.5, 0.05);
    EXPECT_EQ(d.stability.kind, StabilityKind::strongly_stable);

    auto u = classify_symbol(wave_family_symbol({1, -0.1, 5}, 1), FrequencyGrid(1, 20, 801));
    EXPECT_FALSE(u.predicts());
}

TEST(Classify, NegativeMassWithCutoff) {
    ClassifyOptions o;
    o.stability.min_radius = 1.0;
    auto c = classify_symbol(wave_family_symbol({1, 1, -1}, 1), FrequencyGrid(1, 20, 801), o);
    ASSERT_EQ(c.contacts.size(), 1u);
    EXPECT_NEAR(c.contacts[0].contact.s, 1.0, 0.2);
    EXPECT_NEAR(c.prediction().at(1, inf).exponent, -1.0, 0.15);
}
