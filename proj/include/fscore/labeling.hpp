// Case assembly: report availability dates and good/bad labeling.
//
// A case turns "bad" when its company first really defaults after the report
// became publicly available. The latest report available at the default date
// carries the bad label; reports that became available only after the default
// are dropped, earlier ones stay good. Technical (cure) events never label.

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fscore/ratios.hpp"
#include "fscore/statement.hpp"

namespace fscore {

struct LabeledCase {
    std::string company_id;
    Date period_end{};
    PeriodType period_type{PeriodType::Q1};
    Date availability_date{};
    PredictorVector predictors;
    Label label{Label::Good};
};

// Statutory filing lag: 30 calendar days for quarterly reports, 90 for annual.
inline Date availability_date(const Date& period_end, PeriodType type) {
    return add_days(period_end, type == PeriodType::Annual ? 90 : 30);
}

struct LabelingResult {
    std::vector<LabeledCase> cases;       // sorted by (company_id, period_end)
    std::vector<std::string> warnings;    // e.g. default events for unknown companies
    std::size_t excluded_incomplete = 0;  // case-wise exclusions (missing model predictor)
    std::size_t dropped_post_default = 0; // reports available only after the default
};

inline LabelingResult label_cases(const std::vector<FinancialStatement>& statements,
                                  const std::vector<DefaultEvent>& defaults,
                                  bool annualize = true) {
    LabelingResult result;

    // Duplicate (company, period) rows are a data defect, not a last-wins merge.
    {
        std::set<std::pair<std::string_view, Date>> seen;
        for (const auto& s : statements) {
            if (!seen.insert({s.company_id, s.period_end}).second)
                throw std::invalid_argument("label_cases: duplicate statement row for company '" +
                                            s.company_id + "' period " +
                                            format_date(s.period_end));
        }
    }

    std::set<std::string_view> known_companies;
    for (const auto& s : statements) known_companies.insert(s.company_id);

    // First REAL default per company.
    std::map<std::string, Date> first_default;
    for (const auto& d : defaults) {
        if (d.kind != DefaultKind::Real) continue;
        if (!known_companies.count(d.company_id)) {
            result.warnings.push_back("default event for unknown company '" + d.company_id +
                                      "' ignored");
            continue;
        }
        auto [it, inserted] = first_default.emplace(d.company_id, d.default_date);
        if (!inserted && d.default_date < it->second) it->second = d.default_date;
    }

    // Case-wise exclusion happens before bad-case selection: a report with a
    // missing model predictor never enters the sample.
    std::map<std::string, std::vector<LabeledCase>> by_company;
    for (const auto& s : statements) {
        LabeledCase c;
        c.company_id = s.company_id;
        c.period_end = s.period_end;
        c.period_type = s.period_type;
        c.availability_date = availability_date(s.period_end, s.period_type);
        c.predictors = compute_predictors(s, annualize);
        if (!has_model_predictors(c.predictors)) {
            ++result.excluded_incomplete;
            continue;
        }
        by_company[s.company_id].push_back(std::move(c));
    }

    for (auto& [company, cases] : by_company) {
        std::sort(cases.begin(), cases.end(), [](const LabeledCase& a, const LabeledCase& b) {
            return a.period_end < b.period_end;
        });
        auto def = first_default.find(company);
        if (def == first_default.end()) {
            for (auto& c : cases) result.cases.push_back(std::move(c));
            continue;
        }
        const Date d = def->second;
        // Latest report with availability <= d is the bad case; later ones drop.
        const LabeledCase* bad = nullptr;
        for (const auto& c : cases)
            if (!(d < c.availability_date) && (!bad || bad->availability_date < c.availability_date))
                bad = &c;
        for (auto& c : cases) {
            if (d < c.availability_date) {
                ++result.dropped_post_default;
                continue;
            }
            c.label = (&c == bad) ? Label::Bad : Label::Good;
            result.cases.push_back(std::move(c));
        }
    }

    std::sort(result.cases.begin(), result.cases.end(),
              [](const LabeledCase& a, const LabeledCase& b) {
                  if (a.company_id != b.company_id) return a.company_id < b.company_id;
                  return a.period_end < b.period_end;
              });
    return result;
}

}  // namespace fscore
