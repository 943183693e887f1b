// Candidate ratio set and the Altman Z''-EM score.
//
// Every ratio is nullable: missing inputs and zero denominators produce a
// missing ratio, never an error. The one extended-real exception is the
// interest coverage ratio, which becomes +inf (ebit >= 0) or -inf (ebit < 0)
// when interest expense is exactly zero.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "fscore/statement.hpp"

namespace fscore {

struct PredictorVector {
    std::optional<double> ln_assets;
    std::optional<double> ln_sales;
    std::optional<double> sales_to_assets;
    std::optional<double> wc_to_assets;
    std::optional<double> re_to_assets;
    std::optional<double> equity_to_tl;
    std::optional<double> ebit_to_sales;
    std::optional<double> ebit_to_assets;
    std::optional<double> ebit_to_interest;  // extended real: may be +-inf
    std::optional<double> cash_to_std;
    std::optional<double> casheq_to_std;
    std::optional<double> ca_to_std;
    std::optional<double> z_em;
};

struct PredictorField {
    std::string_view name;
    std::string_view display;
    std::optional<double> PredictorVector::*member;
};

inline constexpr std::array<PredictorField, 13> predictor_fields{{
    {"ln_assets", "LN(Assets)", &PredictorVector::ln_assets},
    {"ln_sales", "LN(Sales)", &PredictorVector::ln_sales},
    {"sales_to_assets", "Sales / Assets", &PredictorVector::sales_to_assets},
    {"wc_to_assets", "Working Capital / Assets", &PredictorVector::wc_to_assets},
    {"re_to_assets", "Retained Earnings / Assets", &PredictorVector::re_to_assets},
    {"equity_to_tl", "Equity / Total Liabilities", &PredictorVector::equity_to_tl},
    {"ebit_to_sales", "EBIT / Sales", &PredictorVector::ebit_to_sales},
    {"ebit_to_assets", "EBIT / Assets", &PredictorVector::ebit_to_assets},
    {"ebit_to_interest", "EBIT / Interest", &PredictorVector::ebit_to_interest},
    {"cash_to_std", "Cash / ST Debt", &PredictorVector::cash_to_std},
    {"casheq_to_std", "Cash & Equivalents / ST Debt", &PredictorVector::casheq_to_std},
    {"ca_to_std", "Current Assets / ST Debt", &PredictorVector::ca_to_std},
    {"z_em", "Altman Z''-Score (EM)", &PredictorVector::z_em},
}};

// The four predictors used by all four models, in model order.
inline constexpr std::array<std::string_view, 4> model_predictor_names{
    "ebit_to_interest", "ln_sales", "re_to_assets", "equity_to_tl"};

inline const PredictorField& predictor_field(std::string_view name) {
    for (const auto& f : predictor_fields)
        if (f.name == name) return f;
    throw std::invalid_argument("unknown predictor field '" + std::string(name) + "'");
}

inline std::optional<double> predictor_value(const PredictorVector& p, std::string_view name) {
    return p.*(predictor_field(name).member);
}

// True when all four model predictors are present (+-inf coverage counts as
// present). Cases failing this are excluded case-wise.
inline bool has_model_predictors(const PredictorVector& p) {
    for (auto name : model_predictor_names)
        if (!predictor_value(p, name).has_value()) return false;
    return true;
}

// Z''-EM = 3.25 + 6.56 WC/TA + 3.26 RE/TA + 6.72 EBIT/TA + 1.05 E/TL.
// Needs assets > 0 and total liabilities > 0; otherwise missing.
inline std::optional<double> altman_z_em(const FinancialStatement& s) {
    if (!s.assets || *s.assets <= 0.0) return std::nullopt;
    if (!s.total_liabilities || *s.total_liabilities <= 0.0) return std::nullopt;
    if (!s.working_capital || !s.retained_earnings || !s.ebit || !s.equity) return std::nullopt;
    const double ta = *s.assets;
    return 3.25 + 6.56 * (*s.working_capital / ta) + 3.26 * (*s.retained_earnings / ta) +
           6.72 * (*s.ebit / ta) + 1.05 * (*s.equity / *s.total_liabilities);
}

// When annualize is set, YTD sales are scaled by 4/q before LN(Sales) and
// Sales/Assets so quarterly and annual reports are comparable. The other
// EBIT ratios stay on YTD figures (numerator and denominator share the
// year-to-date basis, so scaling would cancel).
inline PredictorVector compute_predictors(const FinancialStatement& s, bool annualize = true) {
    PredictorVector p;

    auto ratio = [](const Money& num, const Money& den) -> std::optional<double> {
        if (!num || !den || *den == 0.0) return std::nullopt;
        return *num / *den;
    };

    if (s.assets && *s.assets > 0.0) p.ln_assets = std::log(*s.assets);

    std::optional<double> sales_eff;
    if (s.sales) {
        const double scale = annualize ? 4.0 / quarter_index(s.period_type) : 1.0;
        sales_eff = *s.sales * scale;
    }
    if (sales_eff && *sales_eff > 0.0) p.ln_sales = std::log(*sales_eff);

    if (sales_eff && s.assets && *s.assets != 0.0) p.sales_to_assets = *sales_eff / *s.assets;
    p.wc_to_assets = ratio(s.working_capital, s.assets);
    p.re_to_assets = ratio(s.retained_earnings, s.assets);
    // a liability-free issuer is outside the model population: missing, not +inf
    p.equity_to_tl = ratio(s.equity, s.total_liabilities);
    p.ebit_to_sales = ratio(s.ebit, s.sales);
    p.ebit_to_assets = ratio(s.ebit, s.assets);

    if (s.ebit && s.interest_expense) {
        if (*s.interest_expense == 0.0) {
            p.ebit_to_interest = *s.ebit >= 0.0 ? std::numeric_limits<double>::infinity()
                                                : -std::numeric_limits<double>::infinity();
        } else {
            p.ebit_to_interest = *s.ebit / *s.interest_expense;
        }
    }

    p.cash_to_std = ratio(s.cash, s.short_term_debt);
    p.casheq_to_std = ratio(s.cash_and_equivalents, s.short_term_debt);
    p.ca_to_std = ratio(s.current_assets, s.short_term_debt);
    p.z_em = altman_z_em(s);
    return p;
}

}  // namespace fscore
