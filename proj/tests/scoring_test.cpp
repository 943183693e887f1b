#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fscore/rng.hpp"
#include "fscore/scoring.hpp"
#include "oracle_helpers.hpp"

using namespace fscore;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const Label G = Label::Good;
const Label B = Label::Bad;

PredictorVector make_vector(double coverage, double ln_sales, double re, double etl) {
    PredictorVector p;
    p.ebit_to_interest = coverage;
    p.ln_sales = ln_sales;
    p.re_to_assets = re;
    p.equity_to_tl = etl;
    return p;
}

}  // namespace

TEST(Membership, AnchorsAndMidpoint) {
    EXPECT_DOUBLE_EQ(membership(2.0, 2.0, 7.0), 0.0);  // lower anchor: (a-a)/(b-a)
    EXPECT_DOUBLE_EQ(membership(7.0, 2.0, 7.0), 1.0);  // upper anchor branch
    EXPECT_DOUBLE_EQ(membership(4.5, 2.0, 7.0), 0.5);
    EXPECT_DOUBLE_EQ(membership(1.0, 2.0, 7.0), 0.0);
    EXPECT_DOUBLE_EQ(membership(9.0, 2.0, 7.0), 1.0);
}

TEST(Membership, InfinitiesClipToTheFlatBranches) {
    EXPECT_DOUBLE_EQ(membership(kInf, 2.0, 7.0), 1.0);
    EXPECT_DOUBLE_EQ(membership(-kInf, 2.0, 7.0), 0.0);
}

TEST(Membership, RejectsDegenerateAnchors) {
    EXPECT_THROW(membership(1.0, 5.0, 5.0), std::invalid_argument);
    EXPECT_THROW(membership(1.0, 5.0, 4.0), std::invalid_argument);
}

TEST(Membership, MonotoneContinuousAndFlatOutsideAnchors) {
    const auto spec = paper_fuzzy_spec();
    for (const auto& e : spec.entries) {
        const double span = e.b - e.a;
        double prev = -1.0;
        for (int i = 0; i <= 4000; ++i) {
            const double x = e.a - span + 3.0 * span * i / 4000.0;
            const double g = membership(x, e.a, e.b);
            EXPECT_GE(g, prev);
            EXPECT_GE(g, 0.0);
            EXPECT_LE(g, 1.0);
            if (x <= e.a) EXPECT_DOUBLE_EQ(g, 0.0);
            if (x >= e.b) EXPECT_DOUBLE_EQ(g, 1.0);
            // local continuity: symmetric probe straddling x
            const double eps = 1e-12 * std::max(1.0, std::abs(x));
            EXPECT_LT(std::abs(membership(x + eps, e.a, e.b) - membership(x - eps, e.a, e.b)),
                      1e-9);
            prev = g;
        }
    }
}

TEST(SScore, PaperCutoffExamples) {
    const auto spec = paper_cutoff_spec();
    EXPECT_EQ(s_score(make_vector(7, 18, 0.2, 2), spec), 4);      // all strictly above
    EXPECT_EQ(s_score(make_vector(2, 16, 0.04, 0.5), spec), 0);   // strict inequality
    EXPECT_EQ(s_score(make_vector(kInf, 10, 0.0, 0.6), spec), 2); // coverage + equity only
}

TEST(SScore, MissingPredictorNamesTheField) {
    PredictorVector p = make_vector(3, 17, 0.1, 1.0);
    p.ln_sales = std::nullopt;
    try {
        s_score(p, paper_cutoff_spec());
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("ln_sales"), std::string::npos);
    }
}

TEST(FsScore, PaperAnchorExamples) {
    const auto spec = paper_fuzzy_spec();
    EXPECT_DOUBLE_EQ(fs_score(make_vector(7, 18, 0.2, 2), spec), 4.0);    // all at b
    EXPECT_DOUBLE_EQ(fs_score(make_vector(1, 15, 0.0, 0.4), spec), 0.0);  // all below a
    EXPECT_DOUBLE_EQ(fs_score(make_vector(4.5, 17, 0.12, 1.25), spec), 2.0);  // four halves
}

TEST(FsScore, StaysInRangeAndMonotone) {
    const auto fuzzy = paper_fuzzy_spec();
    const auto cuts = paper_cutoff_spec();
    Rng rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const auto p = make_vector(rng.normal(3, 4), rng.normal(16, 2), rng.normal(0.1, 0.2),
                                   rng.lognormal(0, 1));
        const double fs = fs_score(p, fuzzy);
        EXPECT_GE(fs, 0.0);
        EXPECT_LE(fs, 4.0);
        const int s = s_score(p, cuts);
        EXPECT_GE(s, 0);
        EXPECT_LE(s, 4);

        // bumping any one predictor never lowers either score
        for (auto field : model_predictor_names) {
            auto q = p;
            auto& slot = q.*(predictor_field(field).member);
            slot = *slot + std::abs(rng.normal(0, 1));
            EXPECT_GE(fs_score(q, fuzzy), fs);
            EXPECT_GE(s_score(q, cuts), s);
        }
    }
}

TEST(FsScore, ContinuumAcrossAnchorIntervals) {
    // strictly increasing along a dense diagonal grid inside the (a,b) bands,
    // where the integral S-Score cannot move
    const auto fuzzy = paper_fuzzy_spec();
    double prev = -1.0;
    for (int i = 0; i <= 500; ++i) {
        const double t = i / 500.0;
        const auto& e = fuzzy.entries;
        const auto p = make_vector(e[0].a + t * (e[0].b - e[0].a),
                                   e[1].a + t * (e[1].b - e[1].a),
                                   e[2].a + t * (e[2].b - e[2].a),
                                   e[3].a + t * (e[3].b - e[3].a));
        const double fs = fs_score(p, fuzzy);
        if (i > 0 && i < 500) EXPECT_GT(fs, prev);
        prev = fs;
    }
}

TEST(BestCutoff, PerfectSplitAtMidpoint) {
    const std::vector<double> v{1, 2, 3, 4};
    const std::vector<Label> l{B, B, G, G};
    const auto r = best_cutoff(v, l);
    EXPECT_DOUBLE_EQ(r.cutoff, 2.5);
    EXPECT_DOUBLE_EQ(r.errors.type1, 0.0);
    EXPECT_DOUBLE_EQ(r.errors.type2, 0.0);
}

TEST(BestCutoff, InvertedPredictorFallsBackToExtremeCandidate) {
    const std::vector<double> v{1, 2, 3, 4};
    const std::vector<Label> l{G, G, B, B};
    const auto r = best_cutoff(v, l);
    EXPECT_DOUBLE_EQ(r.errors.total(), 1.0);
    EXPECT_DOUBLE_EQ(r.cutoff, 0.5);  // tie with above-max candidate breaks low
    EXPECT_DOUBLE_EQ(r.errors.type1, 1.0);
    EXPECT_DOUBLE_EQ(r.errors.type2, 0.0);
}

TEST(BestCutoff, InterleavedCase) {
    const std::vector<double> v{1, 2, 3, 4};
    const std::vector<Label> l{B, G, B, G};
    const auto r = best_cutoff(v, l);
    EXPECT_DOUBLE_EQ(r.cutoff, 1.5);
    EXPECT_DOUBLE_EQ(r.errors.type1, 0.5);
    EXPECT_DOUBLE_EQ(r.errors.type2, 0.0);
}

TEST(BestCutoff, SingleClassIsUndefined) {
    const std::vector<double> v{1, 2};
    EXPECT_THROW(best_cutoff(v, std::vector<Label>{G, G}), undefined_metric_error);
}

TEST(BestCutoff, MatchesExhaustiveScan) {
    Rng rng(33);
    std::vector<double> v;
    std::vector<Label> l;
    for (int rep = 0; rep < 100; ++rep) {
        oracle::random_scored_sample(rng, 80, true, v, l);
        const auto r = best_cutoff(v, l);
        const double oracle_best = oracle::exhaustive_best_total_error(v, l);
        EXPECT_EQ(r.errors.total(), oracle_best);
        // and the returned pair is the real error at the returned cutoff
        const auto [t1, t2] = oracle::errors_at(v, l, r.cutoff);
        EXPECT_DOUBLE_EQ(r.errors.type1, t1);
        EXPECT_DOUBLE_EQ(r.errors.type2, t2);
    }
}

TEST(BestCutoff, AllValuesEqual) {
    const std::vector<double> v{3, 3, 3};
    const std::vector<Label> l{B, G, G};
    const auto r = best_cutoff(v, l);
    EXPECT_DOUBLE_EQ(r.errors.total(), 1.0);
    EXPECT_DOUBLE_EQ(r.cutoff, 2.0);  // below-minimum candidate, ties break low
}

TEST(SpecValidation, RejectsWrongShapes) {
    CutoffSpec cut = paper_cutoff_spec();
    cut.entries.pop_back();
    EXPECT_THROW(cut.validate(), std::invalid_argument);

    FuzzySpec fz = paper_fuzzy_spec();
    fz.entries[0].b = fz.entries[0].a;
    EXPECT_THROW(fz.validate(), std::invalid_argument);

    FuzzySpec swapped = paper_fuzzy_spec();
    std::swap(swapped.entries[0], swapped.entries[1]);
    EXPECT_THROW(swapped.validate(), std::invalid_argument);
}
