// Seeded synthetic dataset generator.
//
// Stands in for the proprietary statement/default feeds: draws the four
// model ratios per company around a latent quality factor, prices the
// default probability with a fuzzy-space logit at the company's last report,
// samples the default flag, and back-solves statement line items consistent
// with the drawn ratios. Deterministic for a fixed seed.
//
// Per-ratio population (company-level means, with small per-period noise):
//   EBIT/Interest        lognormal, median ~3,  spread x/ 2.5
//   LN(Sales)            normal(16.3, 1.3)      (annualized sales)
//   Retained E./Assets   normal(0.10, 0.11)
//   Equity/Liabilities   lognormal, median ~1.1
// All four load 0.7 on a shared quality factor, which reproduces the
// moderate cross-correlations seen in real predictor tables.

#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "fscore/labeling.hpp"
#include "fscore/logit.hpp"
#include "fscore/rng.hpp"
#include "fscore/scoring.hpp"
#include "fscore/statement.hpp"

namespace fscore {

struct SyntheticDataset {
    std::vector<FinancialStatement> statements;
    std::vector<DefaultEvent> defaults;
    std::vector<RatingRecord> ratings;  // ~29% of companies carry one

    double mean_predicted_pd = 0.0;  // mean trigger probability across companies
    std::size_t real_default_count = 0;
};

namespace detail {

struct DrawnRatios {
    double coverage;  // EBIT / Interest
    double ln_sales;  // annualized
    double re_to_assets;
    double equity_to_tl;
};

inline FinancialStatement backsolve_statement(const std::string& company, const Date& period_end,
                                              PeriodType type, const DrawnRatios& r, Rng& rng) {
    const int q = quarter_index(type);
    const double sales_ann = std::exp(r.ln_sales);
    const double sales_ytd = sales_ann * q / 4.0;
    const double assets = sales_ann / rng.lognormal(-0.1, 0.35);
    const double equity = assets * r.equity_to_tl / (1.0 + r.equity_to_tl);
    const double tl = assets / (1.0 + r.equity_to_tl);
    const double interest = tl * rng.uniform(0.06, 0.14) * q / 4.0;
    const double std_debt = tl * rng.uniform(0.2, 0.6);
    const double cash = std_debt * rng.lognormal(-1.2, 0.8);

    FinancialStatement s;
    s.company_id = company;
    s.period_end = period_end;
    s.period_type = type;
    // whole thousands, as filed
    auto money = [](double v) { return std::round(v); };
    s.assets = money(assets);
    s.sales = money(sales_ytd);
    s.ebit = money(r.coverage * interest);
    s.interest_expense = money(interest);
    s.equity = money(equity);
    s.total_liabilities = money(tl);
    s.retained_earnings = money(r.re_to_assets * assets);
    s.working_capital = money(assets * rng.normal(0.08, 0.15));
    s.cash = money(cash);
    s.cash_and_equivalents = money(cash * rng.uniform(1.0, 1.5));
    s.short_term_debt = money(std_debt);
    s.current_assets = money(std_debt * rng.lognormal(0.25, 0.5));
    return s;
}

inline std::string external_rating_string(double fs, Rng& rng, Agency& agency_out) {
    const char* sp_fitch[5][4] = {{"A+", "A", "A-", "AA-"},
                                  {"BBB+", "BBB", "BBB-", "BBB"},
                                  {"BB+", "BB", "BB-", "BB"},
                                  {"B+", "B", "B-", "B"},
                                  {"CCC+", "CCC", "CC", "C"}};
    const char* moodys[5][4] = {{"A1", "A2", "A3", "Aa3"},
                                {"Baa1", "Baa2", "Baa3", "Baa2"},
                                {"Ba1", "Ba2", "Ba3", "Ba2"},
                                {"B1", "B2", "B3", "B2"},
                                {"Caa1", "Caa2", "Ca", "Caa3"}};
    int band;
    if (fs >= 3.4)
        band = 0;
    else if (fs >= 2.5)
        band = 1;
    else if (fs >= 1.5)
        band = 2;
    else if (fs >= 0.4)
        band = 3;
    else
        band = 4;
    const int agency_pick = rng.uniform_int(0, 2);
    const int variant = rng.uniform_int(0, 3);
    agency_out = agency_pick == 0 ? Agency::SP : agency_pick == 1 ? Agency::Moodys : Agency::Fitch;
    return agency_pick == 1 ? moodys[band][variant] : sp_fitch[band][variant];
}

}  // namespace detail

inline SyntheticDataset generate_synthetic_dataset(std::uint64_t seed, int n_companies,
                                                   const LogitModel& model,
                                                   const FuzzySpec& fuzzy) {
    if (n_companies < 2)
        throw std::invalid_argument("generate_synthetic_dataset: need n_companies >= 2");
    model.validate();
    if (model.space != PredictorSpace::Fuzzy)
        throw std::invalid_argument("generate_synthetic_dataset: model must be fuzzy-space");
    fuzzy.validate();

    // 1Q 2008 .. 3Q 2009 observation window
    const std::vector<std::pair<Date, PeriodType>> periods = {
        {parse_date("2008-03-31"), PeriodType::Q1}, {parse_date("2008-06-30"), PeriodType::Q2},
        {parse_date("2008-09-30"), PeriodType::Q3}, {parse_date("2008-12-31"), PeriodType::Annual},
        {parse_date("2009-03-31"), PeriodType::Q1}, {parse_date("2009-06-30"), PeriodType::Q2},
        {parse_date("2009-09-30"), PeriodType::Q3}};

    Rng rng(seed);
    SyntheticDataset out;
    double pd_sum = 0.0;

    auto coef = [&](std::string_view field) {
        for (const auto& [name, b] : model.coefficients)
            if (name == field) return b;
        throw std::invalid_argument("generate_synthetic_dataset: missing coefficient");
    };

    for (int i = 0; i < n_companies; ++i) {
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "C%05d", i + 1);
        const std::string company = idbuf;

        const double quality = rng.normal();
        auto mix = [&] { return 0.7 * quality + 0.714142842854285 * rng.normal(); };
        const double cov_log_mean = 0.8 + 0.9 * mix();
        const double ln_sales_mean = 16.0 + 1.3 * mix();
        const double re_mean = 0.08 + 0.11 * mix();
        const double etl_log_mean = -0.1 + 0.9 * mix();

        const int n_periods = rng.uniform_int(3, int(periods.size()));
        const int start = rng.uniform_int(0, int(periods.size()) - n_periods);

        detail::DrawnRatios last{};
        double mean_fs = 0.0;
        for (int t = 0; t < n_periods; ++t) {
            detail::DrawnRatios r;
            r.coverage = std::exp(cov_log_mean + 0.25 * rng.normal());
            r.ln_sales = ln_sales_mean + 0.12 * rng.normal();
            r.re_to_assets = re_mean + 0.03 * rng.normal();
            r.equity_to_tl = std::exp(etl_log_mean + 0.15 * rng.normal());
            const auto& [pe, pt] = periods[start + t];
            out.statements.push_back(detail::backsolve_statement(company, pe, pt, r, rng));
            last = r;

            double fs = 0.0;
            fs += membership(r.coverage, fuzzy.entry("ebit_to_interest").a,
                             fuzzy.entry("ebit_to_interest").b);
            fs += membership(r.ln_sales, fuzzy.entry("ln_sales").a, fuzzy.entry("ln_sales").b);
            fs += membership(r.re_to_assets, fuzzy.entry("re_to_assets").a,
                             fuzzy.entry("re_to_assets").b);
            fs += membership(r.equity_to_tl, fuzzy.entry("equity_to_tl").a,
                             fuzzy.entry("equity_to_tl").b);
            mean_fs += fs / n_periods;
        }

        // default priced at the last available report
        double eta = model.intercept;
        eta += coef("ebit_to_interest") * membership(last.coverage,
                                                     fuzzy.entry("ebit_to_interest").a,
                                                     fuzzy.entry("ebit_to_interest").b);
        eta += coef("ln_sales") *
               membership(last.ln_sales, fuzzy.entry("ln_sales").a, fuzzy.entry("ln_sales").b);
        eta += coef("re_to_assets") * membership(last.re_to_assets,
                                                 fuzzy.entry("re_to_assets").a,
                                                 fuzzy.entry("re_to_assets").b);
        eta += coef("equity_to_tl") * membership(last.equity_to_tl,
                                                 fuzzy.entry("equity_to_tl").a,
                                                 fuzzy.entry("equity_to_tl").b);
        const double pd = logistic(eta);
        pd_sum += pd;

        const int last_idx = start + n_periods - 1;
        const Date last_avail =
            availability_date(periods[last_idx].first, periods[last_idx].second);

        if (rng.bernoulli(pd)) {
            ++out.real_default_count;
            const Date default_date = add_days(last_avail, rng.uniform_int(5, 55));
            // an earlier cure event now and then; the first REAL event rules
            if (rng.bernoulli(0.15))
                out.defaults.push_back(
                    {company, add_days(default_date, -rng.uniform_int(30, 120)),
                     DefaultKind::Technical});
            out.defaults.push_back({company, default_date, DefaultKind::Real});
            // sometimes the next report still gets filed and must be dropped
            if (last_idx + 1 < int(periods.size()) && rng.bernoulli(0.5)) {
                detail::DrawnRatios r = last;
                r.coverage = std::exp(cov_log_mean + 0.25 * rng.normal());
                r.re_to_assets = re_mean + 0.03 * rng.normal();
                const auto& [pe, pt] = periods[last_idx + 1];
                out.statements.push_back(detail::backsolve_statement(company, pe, pt, r, rng));
            }
        } else if (rng.bernoulli(0.04)) {
            out.defaults.push_back(
                {company, add_days(parse_date("2009-01-01"), rng.uniform_int(0, 180)),
                 DefaultKind::Technical});
        }

        if (rng.bernoulli(0.29)) {
            const double noisy_fs = std::min(4.0, std::max(0.0, mean_fs + rng.normal(0.0, 0.35)));
            Agency agency;
            const std::string raw = detail::external_rating_string(noisy_fs, rng, agency);
            out.ratings.push_back(
                {company, add_days(parse_date("2008-06-30"), rng.uniform_int(0, 365)), agency,
                 raw});
        }
    }

    out.mean_predicted_pd = pd_sum / n_companies;
    return out;
}

}  // namespace fscore
