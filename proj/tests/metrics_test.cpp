#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fscore/metrics.hpp"
#include "fscore/rng.hpp"
#include "oracle_helpers.hpp"

using namespace fscore;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const Label G = Label::Good;
const Label B = Label::Bad;
}  // namespace

TEST(Gini, PerfectSeparation) {
    const std::vector<double> s{1, 2, 3, 4};
    const std::vector<Label> l{B, B, G, G};
    EXPECT_DOUBLE_EQ(gini_ar(s, l), 1.0);
}

TEST(Gini, AllTiesGiveZero) {
    const std::vector<double> s{5, 5, 5, 5};
    const std::vector<Label> l{B, B, G, G};
    EXPECT_DOUBLE_EQ(gini_ar(s, l), 0.0);
}

TEST(Gini, InterleavedCase) {
    // brute force over the 4 pairs: AUC = 3/4
    const std::vector<double> s{1, 2, 3, 4};
    const std::vector<Label> l{B, G, B, G};
    EXPECT_DOUBLE_EQ(gini_ar(s, l), 0.5);
    EXPECT_DOUBLE_EQ(oracle::pairwise_gini(s, l), 0.5);
}

TEST(Gini, SingleClassIsUndefined) {
    const std::vector<double> s{1, 2};
    EXPECT_THROW(gini_ar(s, std::vector<Label>{G, G}), undefined_metric_error);
    EXPECT_THROW(gini_ar(s, std::vector<Label>{B, B}), undefined_metric_error);
}

TEST(Gini, NanScoreRejected) {
    const std::vector<double> s{1, std::nan("")};
    const std::vector<Label> l{B, G};
    EXPECT_THROW(gini_ar(s, l), std::invalid_argument);
}

TEST(Gini, AgreesWithPairwiseOracleUnderTies) {
    Rng rng(77);
    std::vector<double> s;
    std::vector<Label> l;
    for (int rep = 0; rep < 100; ++rep) {
        oracle::random_scored_sample(rng, 200, true, s, l);
        EXPECT_NEAR(gini_ar(s, l), oracle::pairwise_gini(s, l), 1e-12);
    }
}

TEST(Gini, InvariantUnderStrictlyIncreasingTransforms) {
    Rng rng(78);
    std::vector<double> s;
    std::vector<Label> l;
    for (int rep = 0; rep < 20; ++rep) {
        oracle::random_scored_sample(rng, 120, false, s, l);
        const double base = gini_ar(s, l);
        std::vector<double> t(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) t[i] = 3.0 * s[i] - 7.0;
        EXPECT_EQ(gini_ar(t, l), base);  // order and tie structure unchanged: exact
        for (std::size_t i = 0; i < s.size(); ++i) t[i] = std::atan(s[i]);
        EXPECT_EQ(gini_ar(t, l), base);
    }
}

TEST(Gini, NegationFlipsSignWithoutTies) {
    Rng rng(79);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> s;
        std::vector<Label> l;
        for (int i = 0; i < 60; ++i) {
            s.push_back(rng.normal() + i * 1e-9);  // distinct values
            l.push_back(rng.bernoulli(0.4) ? B : G);
        }
        l[0] = B;
        l[1] = G;
        std::vector<double> neg(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) neg[i] = -s[i];
        EXPECT_NEAR(gini_ar(neg, l), -gini_ar(s, l), 1e-15);
    }
}

TEST(RocCurve, InvariantsHoldIncludingInfiniteScores) {
    Rng rng(80);
    std::vector<double> s;
    std::vector<Label> l;
    for (int rep = 0; rep < 50; ++rep) {
        oracle::random_scored_sample(rng, 150, true, s, l);
        const auto curve = roc_curve(s, l);
        ASSERT_GE(curve.points.size(), 2u);
        EXPECT_DOUBLE_EQ(curve.points.front().fpr, 0.0);
        EXPECT_DOUBLE_EQ(curve.points.front().tpr, 0.0);
        EXPECT_DOUBLE_EQ(curve.points.back().fpr, 1.0);
        EXPECT_DOUBLE_EQ(curve.points.back().tpr, 1.0);
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            EXPECT_GE(curve.points[i].fpr, curve.points[i - 1].fpr);
            EXPECT_GE(curve.points[i].tpr, curve.points[i - 1].tpr);
        }
    }
}

TEST(ClassificationErrors, SpecCases) {
    const std::vector<double> s{1, 2, 3, 4};
    const std::vector<Label> l{B, B, G, G};
    auto e = classification_errors(s, l, 2.5);  // perfect separator at the midpoint
    EXPECT_DOUBLE_EQ(e.type1, 0.0);
    EXPECT_DOUBLE_EQ(e.type2, 0.0);

    e = classification_errors(s, l, 0.0);  // below all scores: everything GOOD
    EXPECT_DOUBLE_EQ(e.type1, 1.0);
    EXPECT_DOUBLE_EQ(e.type2, 0.0);

    const std::vector<Label> l2{B, G, B, G};
    e = classification_errors(s, l2, 2.0);  // score > 2 => GOOD
    EXPECT_DOUBLE_EQ(e.type1, 0.5);
    EXPECT_DOUBLE_EQ(e.type2, 0.5);
    EXPECT_DOUBLE_EQ(e.total(), 1.0);
}

TEST(Pearson, HandComputedThreePoints) {
    const std::vector<double> x{0, 1, 2};
    const std::vector<double> y{0, 1, 4};
    // independent oracle (exact arithmetic): 4 / sqrt(2 * 26/3)
    EXPECT_NEAR(pearson(x, y), 0.96076892283052284, 1e-12);
}

TEST(Pearson, ExactNegativeOne) {
    const std::vector<double> x{1, 2, 3, 4};
    std::vector<double> y;
    for (double v : x) y.push_back(-v);
    EXPECT_DOUBLE_EQ(pearson(x, y), -1.0);
    EXPECT_DOUBLE_EQ(pearson(x, x), 1.0);
}

TEST(CorrelationMatrix, DiagonalAndSymmetry) {
    Rng rng(81);
    std::vector<PredictorVector> vectors;
    for (int i = 0; i < 40; ++i) {
        PredictorVector p;
        p.ebit_to_interest = rng.normal(3, 2);
        p.ln_sales = rng.normal(16, 1);
        p.re_to_assets = rng.normal(0.1, 0.1);
        p.equity_to_tl = *p.re_to_assets * 2 + rng.normal(1, 0.5);
        vectors.push_back(p);
    }
    const auto m = correlation_matrix(
        vectors, std::span<const std::string_view>(model_predictor_names));
    ASSERT_EQ(m.n, 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(m.at(i, i), 1.0);
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_DOUBLE_EQ(m.at(i, j), m.at(j, i));
            EXPECT_LE(std::abs(m.at(i, j)), 1.0 + 1e-12);
        }
    }
}

TEST(CorrelationMatrix, InfiniteAndMissingCasesAreSkipped) {
    std::vector<PredictorVector> vectors;
    for (int i = 0; i < 10; ++i) {
        PredictorVector p;
        p.ebit_to_interest = double(i);
        p.ln_sales = 16.0 + 0.3 * i * i;
        p.re_to_assets = 0.01 * i;
        p.equity_to_tl = 0.5 + 0.1 * (i % 3);
        vectors.push_back(p);
    }
    vectors[0].ebit_to_interest = kInf;   // skipped
    vectors[1].ln_sales = std::nullopt;   // skipped
    const auto m = correlation_matrix(
        vectors, std::span<const std::string_view>(model_predictor_names));
    EXPECT_EQ(m.n, 4u);
}

TEST(CorrelationMatrix, ErrorsNameTheField) {
    std::vector<PredictorVector> vectors;
    for (int i = 0; i < 5; ++i) {
        PredictorVector p;
        p.ebit_to_interest = 1.0;  // zero variance
        p.ln_sales = double(i);
        p.re_to_assets = double(i * i);
        p.equity_to_tl = double(3 - i);
        vectors.push_back(p);
    }
    try {
        correlation_matrix(vectors, std::span<const std::string_view>(model_predictor_names));
        FAIL() << "expected undefined_metric_error";
    } catch (const undefined_metric_error& e) {
        EXPECT_NE(std::string(e.what()).find("ebit_to_interest"), std::string::npos);
    }

    vectors.resize(2);  // fewer than 3 complete cases
    EXPECT_THROW(
        correlation_matrix(vectors, std::span<const std::string_view>(model_predictor_names)),
        undefined_metric_error);
}

TEST(FirstPcShare, ClosedFormCases) {
    SquareMatrix id4(4);
    for (int i = 0; i < 4; ++i) id4.at(i, i) = 1.0;
    EXPECT_NEAR(first_pc_variance_share(id4), 0.25, 1e-12);

    SquareMatrix ones(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ones.at(i, j) = 1.0;
    EXPECT_NEAR(first_pc_variance_share(ones), 1.0, 1e-10);

    SquareMatrix two(2);
    two.at(0, 0) = two.at(1, 1) = 1.0;
    two.at(0, 1) = two.at(1, 0) = 0.5;  // eigenvalues 1 +- rho
    EXPECT_NEAR(first_pc_variance_share(two), 0.75, 1e-12);
}

TEST(FirstPcShare, PublishedPredictorCorrelationsStayUnderHalf) {
    // the reported correlation table; numpy eigvalsh gives share 0.43750612787
    SquareMatrix m(4);
    const double v[4][4] = {{1, .1160, .3015, .3726},
                            {.1160, 1, .2104, .3507},
                            {.3015, .2104, 1, .133},
                            {.3726, .3507, .133, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = v[i][j];
    const double share = first_pc_variance_share(m);
    EXPECT_NEAR(share, 0.43750612787354465, 1e-9);
    EXPECT_LT(share, 0.5);
}

TEST(FirstPcShare, RejectsMalformedInput) {
    SquareMatrix bad(2);
    bad.at(0, 0) = bad.at(1, 1) = 1.0;
    bad.at(0, 1) = 0.4;
    bad.at(1, 0) = 0.1;  // asymmetric
    EXPECT_THROW(first_pc_variance_share(bad), std::invalid_argument);

    SquareMatrix npsd(2);
    npsd.at(0, 0) = npsd.at(1, 1) = 1.0;
    npsd.at(0, 1) = npsd.at(1, 0) = 1.5;  // eigenvalue -0.5
    EXPECT_THROW(first_pc_variance_share(npsd), std::invalid_argument);

    SquareMatrix diag(2);
    diag.at(0, 0) = 2.0;
    diag.at(1, 1) = 1.0;  // not a correlation matrix
    EXPECT_THROW(first_pc_variance_share(diag), std::invalid_argument);
}

TEST(EmpiricalCdf, CountingDefinition) {
    auto one = empirical_cdf({5.0});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_DOUBLE_EQ(one[0].first, 5.0);
    EXPECT_DOUBLE_EQ(one[0].second, 1.0);

    const auto steps = empirical_cdf({1, 2, 2, 4});
    ASSERT_EQ(steps.size(), 3u);
    EXPECT_DOUBLE_EQ(steps[0].second, 0.25);
    EXPECT_DOUBLE_EQ(steps[1].first, 2.0);
    EXPECT_DOUBLE_EQ(steps[1].second, 0.75);  // F(2) counts both twos
    EXPECT_DOUBLE_EQ(steps[2].second, 1.0);

    EXPECT_THROW(empirical_cdf({}), std::invalid_argument);
}

TEST(EmpiricalCdf, UniformSampleMedianSanity) {
    Rng rng(82);
    std::vector<double> draws;
    for (int i = 0; i < 1000; ++i) draws.push_back(rng.uniform());
    const auto steps = empirical_cdf(draws);
    // F at the sample point closest to 0.5 should be near one half
    double f_at_median = 0.0;
    for (const auto& [x, f] : steps)
        if (x <= 0.5) f_at_median = f;
    EXPECT_GE(f_at_median, 0.45);
    EXPECT_LE(f_at_median, 0.55);
    for (std::size_t i = 1; i < steps.size(); ++i) {
        EXPECT_GT(steps[i].first, steps[i - 1].first);
        EXPECT_GT(steps[i].second, steps[i - 1].second);
    }
    EXPECT_DOUBLE_EQ(steps.back().second, 1.0);
}
