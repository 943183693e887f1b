#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fscore/ratios.hpp"
#include "fscore/rng.hpp"

using namespace fscore;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FinancialStatement base_statement() {
    FinancialStatement s;
    s.company_id = "X";
    s.period_end = parse_date("2008-12-31");
    s.period_type = PeriodType::Annual;
    s.assets = 1000000.0;
    s.sales = 800000.0;
    s.ebit = 100000.0;
    s.interest_expense = 50000.0;
    s.equity = 400000.0;
    s.total_liabilities = 600000.0;
    s.retained_earnings = 120000.0;
    s.working_capital = 90000.0;
    s.cash = 50000.0;
    s.cash_and_equivalents = 60000.0;
    s.short_term_debt = 200000.0;
    s.current_assets = 300000.0;
    return s;
}

}  // namespace

TEST(Ratios, LnSalesNearSixteenAtTheCutoffScale) {
    auto s = base_statement();
    s.sales = 8886111.0;  // ~ e^16 thousand RUB
    const auto p = compute_predictors(s);
    ASSERT_TRUE(p.ln_sales.has_value());
    // independent oracle: mpmath log(8886111) = 16.00000005395972887...
    EXPECT_NEAR(*p.ln_sales, 16.000000053959729, 1e-12);
}

TEST(Ratios, EquityToLiabilitiesAtTheBoundary) {
    auto s = base_statement();
    s.equity = 1000.0;
    s.total_liabilities = 2000.0;
    EXPECT_DOUBLE_EQ(*compute_predictors(s).equity_to_tl, 0.5);
}

TEST(Ratios, ZeroInterestGivesSignedInfinity) {
    auto s = base_statement();
    s.interest_expense = 0.0;
    s.ebit = 5.0;
    EXPECT_EQ(*compute_predictors(s).ebit_to_interest, kInf);
    s.ebit = -5.0;
    EXPECT_EQ(*compute_predictors(s).ebit_to_interest, -kInf);
    s.ebit = 0.0;  // declared rule: ebit >= 0 maps to +inf
    EXPECT_EQ(*compute_predictors(s).ebit_to_interest, kInf);
}

TEST(Ratios, AnnualizationScalesOnlySalesRatios) {
    auto s = base_statement();
    s.period_end = parse_date("2008-06-30");
    s.period_type = PeriodType::Q2;
    const auto on = compute_predictors(s, true);
    const auto off = compute_predictors(s, false);
    // q = 2, so YTD sales double
    EXPECT_DOUBLE_EQ(*on.ln_sales, std::log(2.0 * *s.sales));
    EXPECT_DOUBLE_EQ(*off.ln_sales, std::log(*s.sales));
    EXPECT_DOUBLE_EQ(*on.sales_to_assets, 2.0 * *s.sales / *s.assets);
    // EBIT ratios stay on the YTD basis under both settings
    EXPECT_DOUBLE_EQ(*on.ebit_to_sales, *off.ebit_to_sales);
    EXPECT_DOUBLE_EQ(*on.ebit_to_assets, *off.ebit_to_assets);
    EXPECT_DOUBLE_EQ(*on.ebit_to_interest, *off.ebit_to_interest);
}

TEST(Ratios, DegenerateInputsTurnMissing) {
    auto s = base_statement();
    s.short_term_debt = 0.0;
    auto p = compute_predictors(s);
    EXPECT_FALSE(p.cash_to_std.has_value());
    EXPECT_FALSE(p.casheq_to_std.has_value());
    EXPECT_FALSE(p.ca_to_std.has_value());

    s = base_statement();
    s.total_liabilities = 0.0;  // liability-free issuer: missing, not +inf
    p = compute_predictors(s);
    EXPECT_FALSE(p.equity_to_tl.has_value());
    EXPECT_FALSE(p.z_em.has_value());

    s = base_statement();
    s.sales = 0.0;
    p = compute_predictors(s);
    EXPECT_FALSE(p.ln_sales.has_value());

    s = base_statement();
    s.assets = -10.0;
    p = compute_predictors(s);
    EXPECT_FALSE(p.ln_assets.has_value());

    s = base_statement();
    s.interest_expense = std::nullopt;
    p = compute_predictors(s);
    EXPECT_FALSE(p.ebit_to_interest.has_value());
    EXPECT_FALSE(has_model_predictors(p));
}

TEST(AltmanZEm, ConstantTermOnly) {
    auto s = base_statement();
    s.working_capital = 0.0;
    s.retained_earnings = 0.0;
    s.ebit = 0.0;
    s.equity = 0.0;
    ASSERT_TRUE(altman_z_em(s).has_value());
    EXPECT_DOUBLE_EQ(*altman_z_em(s), 3.25);
}

TEST(AltmanZEm, HandEvaluatedPoints) {
    auto s = base_statement();
    s.assets = 1000.0;
    s.working_capital = 100.0;   // WC/TA  = 0.1
    s.retained_earnings = 100.0; // RE/TA  = 0.1
    s.ebit = 100.0;              // EBIT/TA = 0.1
    s.equity = 500.0;
    s.total_liabilities = 500.0; // E/TL = 1
    // 3.25 + 0.656 + 0.326 + 0.672 + 1.05
    EXPECT_NEAR(*altman_z_em(s), 5.954, 1e-12);

    s.working_capital = -500.0;
    s.retained_earnings = -500.0;
    s.ebit = -500.0;
    s.equity = 0.0;
    // 3.25 - 0.5 * (6.56 + 3.26 + 6.72) = -5.02
    EXPECT_NEAR(*altman_z_em(s), -5.02, 1e-12);
}

TEST(AltmanZEm, MissingInputsGiveMissingOutput) {
    auto s = base_statement();
    s.working_capital = std::nullopt;
    EXPECT_FALSE(altman_z_em(s).has_value());
    s = base_statement();
    s.assets = 0.0;
    EXPECT_FALSE(altman_z_em(s).has_value());
}

TEST(AltmanZEm, LinearInEachRatio) {
    // finite differences recover the published coefficients
    auto apply = [](double wc, double re, double ebit, double etl) {
        auto s = base_statement();
        s.assets = 1.0;
        s.total_liabilities = 1.0;
        s.working_capital = wc;
        s.retained_earnings = re;
        s.ebit = ebit;
        s.equity = etl;
        return *altman_z_em(s);
    };
    const double h = 0.125;  // power of two keeps the differences exact
    EXPECT_DOUBLE_EQ((apply(h, 0, 0, 0) - apply(-h, 0, 0, 0)) / (2 * h), 6.56);
    EXPECT_DOUBLE_EQ((apply(0, h, 0, 0) - apply(0, -h, 0, 0)) / (2 * h), 3.26);
    EXPECT_DOUBLE_EQ((apply(0, 0, h, 0) - apply(0, 0, -h, 0)) / (2 * h), 6.72);
    EXPECT_DOUBLE_EQ((apply(0, 0, 0, h) - apply(0, 0, 0, -h)) / (2 * h), 1.05);
}

TEST(Ratios, ScaleCovariance) {
    Rng rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        auto s = base_statement();
        s.assets = rng.lognormal(13, 1.5);
        s.sales = rng.lognormal(13, 1.5);
        s.ebit = rng.normal(5e4, 5e4);
        s.interest_expense = rng.lognormal(9, 1);
        s.equity = rng.lognormal(12, 1);
        s.total_liabilities = rng.lognormal(12, 1);
        s.retained_earnings = rng.normal(1e5, 2e5);
        s.working_capital = rng.normal(1e5, 2e5);
        s.cash = rng.lognormal(10, 1);
        s.cash_and_equivalents = rng.lognormal(10, 1);
        s.short_term_debt = rng.lognormal(11, 1);
        s.current_assets = rng.lognormal(11, 1);

        const double k = 1024.0;  // power of two: ratios scale without rounding
        auto scaled = s;
        for (auto field : {&FinancialStatement::assets, &FinancialStatement::sales,
                           &FinancialStatement::ebit, &FinancialStatement::interest_expense,
                           &FinancialStatement::equity, &FinancialStatement::total_liabilities,
                           &FinancialStatement::retained_earnings,
                           &FinancialStatement::working_capital, &FinancialStatement::cash,
                           &FinancialStatement::cash_and_equivalents,
                           &FinancialStatement::short_term_debt,
                           &FinancialStatement::current_assets})
            scaled.*field = *(s.*field) * k;

        const auto p = compute_predictors(s);
        const auto q = compute_predictors(scaled);
        EXPECT_DOUBLE_EQ(*q.sales_to_assets, *p.sales_to_assets);
        EXPECT_DOUBLE_EQ(*q.wc_to_assets, *p.wc_to_assets);
        EXPECT_DOUBLE_EQ(*q.re_to_assets, *p.re_to_assets);
        EXPECT_DOUBLE_EQ(*q.equity_to_tl, *p.equity_to_tl);
        EXPECT_DOUBLE_EQ(*q.ebit_to_sales, *p.ebit_to_sales);
        EXPECT_DOUBLE_EQ(*q.ebit_to_assets, *p.ebit_to_assets);
        EXPECT_DOUBLE_EQ(*q.ebit_to_interest, *p.ebit_to_interest);
        EXPECT_DOUBLE_EQ(*q.cash_to_std, *p.cash_to_std);
        EXPECT_NEAR(*q.ln_assets - *p.ln_assets, std::log(k), 1e-12);
        EXPECT_NEAR(*q.ln_sales - *p.ln_sales, std::log(k), 1e-12);
        EXPECT_DOUBLE_EQ(*q.z_em, *p.z_em);
    }
}

TEST(Ratios, FieldRegistryLookups) {
    PredictorVector p;
    p.ln_sales = 16.5;
    EXPECT_EQ(predictor_value(p, "ln_sales"), 16.5);
    EXPECT_EQ(predictor_value(p, "z_em"), std::nullopt);
    EXPECT_THROW(predictor_value(p, "nope"), std::invalid_argument);
    EXPECT_EQ(predictor_fields.size(), 13u);
}
