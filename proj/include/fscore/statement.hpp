// Input records: financial statements, default events, agency ratings.
//
// All money amounts are in thousand RUB as filed under RAS. A nullopt field
// means the value was absent in the source data; degenerate values propagate
// to missing ratios rather than erroring.

#pragma once

#include <optional>
#include <string>

#include "fscore/dates.hpp"

namespace fscore {

using Money = std::optional<double>;

struct FinancialStatement {
    std::string company_id;
    Date period_end{};
    PeriodType period_type{PeriodType::Q1};

    Money assets;
    Money sales;  // YTD
    Money ebit;   // YTD
    Money interest_expense;
    Money equity;
    Money total_liabilities;
    Money retained_earnings;
    Money working_capital;
    Money cash;
    Money cash_and_equivalents;
    Money short_term_debt;
    Money current_assets;
};

enum class DefaultKind { Real, Technical };

inline std::string_view to_string(DefaultKind k) {
    return k == DefaultKind::Real ? "REAL" : "TECHNICAL";
}

inline std::optional<DefaultKind> parse_default_kind(std::string_view s) {
    if (s == "REAL") return DefaultKind::Real;
    if (s == "TECHNICAL") return DefaultKind::Technical;
    return std::nullopt;
}

// A cure (technical) event never produces a bad label; a company's first
// REAL event defines its default date.
struct DefaultEvent {
    std::string company_id;
    Date default_date{};
    DefaultKind kind{DefaultKind::Real};
};

enum class Agency { SP, Moodys, Fitch };

inline std::string_view to_string(Agency a) {
    switch (a) {
        case Agency::SP: return "SP";
        case Agency::Moodys: return "MOODYS";
        case Agency::Fitch: return "FITCH";
    }
    return "?";
}

inline std::optional<Agency> parse_agency(std::string_view s) {
    if (s == "SP") return Agency::SP;
    if (s == "MOODYS") return Agency::Moodys;
    if (s == "FITCH") return Agency::Fitch;
    return std::nullopt;
}

struct RatingRecord {
    std::string company_id;
    Date as_of{};
    Agency agency{Agency::SP};
    std::string grade;  // raw agency string, e.g. "BB-" or "Ba3"
};

enum class Label { Good, Bad };

inline std::string_view to_string(Label l) { return l == Label::Good ? "GOOD" : "BAD"; }

}  // namespace fscore
