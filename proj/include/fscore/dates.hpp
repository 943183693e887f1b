// Calendar helpers for RAS reporting periods.
//
// Reporting dates are always quarter-end days; report availability adds the
// statutory filing lag (30 calendar days for Q1-Q3, 90 for the annual report).

#pragma once

#include <charconv>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fscore {

using Date = std::chrono::year_month_day;

enum class PeriodType { Q1, Q2, Q3, Annual };

// 1..4; the annual report covers the fourth quarter.
inline int quarter_index(PeriodType t) {
    switch (t) {
        case PeriodType::Q1: return 1;
        case PeriodType::Q2: return 2;
        case PeriodType::Q3: return 3;
        case PeriodType::Annual: return 4;
    }
    throw std::invalid_argument("quarter_index: bad period type");
}

inline std::string_view to_string(PeriodType t) {
    switch (t) {
        case PeriodType::Q1: return "Q1";
        case PeriodType::Q2: return "Q2";
        case PeriodType::Q3: return "Q3";
        case PeriodType::Annual: return "ANNUAL";
    }
    throw std::invalid_argument("to_string: bad period type");
}

inline std::optional<PeriodType> parse_period_type(std::string_view s) {
    if (s == "Q1") return PeriodType::Q1;
    if (s == "Q2") return PeriodType::Q2;
    if (s == "Q3") return PeriodType::Q3;
    if (s == "ANNUAL") return PeriodType::Annual;
    return std::nullopt;
}

// Calendar month a period of this type must end in (3, 6, 9 or 12).
inline unsigned period_end_month(PeriodType t) {
    return static_cast<unsigned>(quarter_index(t) * 3);
}

inline Date add_days(const Date& d, int days) {
    return Date{std::chrono::sys_days{d} + std::chrono::days{days}};
}

inline bool is_quarter_end(const Date& d) {
    if (!d.ok()) return false;
    const unsigned m = static_cast<unsigned>(d.month());
    if (m != 3 && m != 6 && m != 9 && m != 12) return false;
    const auto last = (d.year() / d.month() / std::chrono::last).day();
    return d.day() == last;
}

// Strict YYYY-MM-DD.
inline Date parse_date(std::string_view s) {
    auto fail = [&] {
        throw std::invalid_argument("parse_date: expected YYYY-MM-DD, got '" + std::string(s) + "'");
    };
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') fail();
    int y = 0;
    unsigned m = 0, d = 0;
    auto num = [&](std::string_view part, auto& out) {
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        if (ec != std::errc{} || p != part.data() + part.size()) fail();
    };
    num(s.substr(0, 4), y);
    num(s.substr(5, 2), m);
    num(s.substr(8, 2), d);
    Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) fail();
    return date;
}

inline std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(d.year()), unsigned(d.month()),
                  unsigned(d.day()));
    return buf;
}

}  // namespace fscore
