// Cut-off and fuzzy scoring models.
//
// S-Score counts strict cut-off exceedances over the four model predictors.
// FS-Score replaces the step indicator with a piecewise-linear membership
//
//   gamma(x; a, b) = 0 for x < a, (x - a)/(b - a) on [a, b), 1 for x >= b
//
// and sums the four memberships, giving a continuous score in [0, 4].
// Cut-offs are estimated by minimizing the total misclassification rate
// (type I + type II) over midpoint candidates.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fscore/metrics.hpp"
#include "fscore/ratios.hpp"

namespace fscore {

struct CutoffSpec {
    // one (field, c) entry per model predictor, model order
    std::vector<std::pair<std::string, double>> entries;

    void validate() const {
        if (entries.size() != model_predictor_names.size())
            throw std::invalid_argument("CutoffSpec: expected exactly 4 entries");
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].first != model_predictor_names[i])
                throw std::invalid_argument("CutoffSpec: entry " + std::to_string(i) +
                                            " must be '" + std::string(model_predictor_names[i]) +
                                            "', got '" + entries[i].first + "'");
    }
};

struct FuzzyEntry {
    std::string field;
    double a;
    double b;
};

struct FuzzySpec {
    std::vector<FuzzyEntry> entries;

    void validate() const {
        if (entries.size() != model_predictor_names.size())
            throw std::invalid_argument("FuzzySpec: expected exactly 4 entries");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].field != model_predictor_names[i])
                throw std::invalid_argument("FuzzySpec: entry " + std::to_string(i) +
                                            " must be '" + std::string(model_predictor_names[i]) +
                                            "', got '" + entries[i].field + "'");
            if (!(entries[i].a < entries[i].b))
                throw std::invalid_argument("FuzzySpec: need a < b for '" + entries[i].field + "'");
        }
    }

    const FuzzyEntry& entry(std::string_view field) const {
        for (const auto& e : entries)
            if (e.field == field) return e;
        throw std::invalid_argument("FuzzySpec: no entry for '" + std::string(field) + "'");
    }
};

// Published cut-offs: EBIT/I 2, LN(Sales) 16, RE/A 0.04, E/TL 0.5.
inline CutoffSpec paper_cutoff_spec() {
    return {{{"ebit_to_interest", 2.0}, {"ln_sales", 16.0}, {"re_to_assets", 0.04},
             {"equity_to_tl", 0.5}}};
}

// Published membership anchors: (2,7), (16,18), (0.04,0.2), (0.5,2).
inline FuzzySpec paper_fuzzy_spec() {
    return {{{"ebit_to_interest", 2.0, 7.0},
             {"ln_sales", 16.0, 18.0},
             {"re_to_assets", 0.04, 0.2},
             {"equity_to_tl", 0.5, 2.0}}};
}

// The piecewise-linear membership; -inf maps to 0 and +inf to 1 through the
// ordinary branch comparisons.
inline double membership(double x, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("membership: need a < b");
    if (x < a) return 0.0;
    if (x >= b) return 1.0;
    return (x - a) / (b - a);
}

namespace detail {

inline double require_model_predictor(const PredictorVector& p, std::string_view field,
                                      const char* who) {
    const auto v = predictor_value(p, field);
    if (!v)
        throw std::invalid_argument(std::string(who) + ": missing predictor '" +
                                    std::string(field) + "'");
    return *v;
}

}  // namespace detail

// Count of strict exceedances X_i > c_i; integer score in [0, 4].
inline int s_score(const PredictorVector& p, const CutoffSpec& spec) {
    spec.validate();
    int score = 0;
    for (const auto& [field, c] : spec.entries)
        if (detail::require_model_predictor(p, field, "s_score") > c) ++score;
    return score;
}

// Sum of the four memberships; continuous score in [0, 4].
inline double fs_score(const PredictorVector& p, const FuzzySpec& spec) {
    spec.validate();
    double score = 0.0;
    for (const auto& e : spec.entries)
        score += membership(detail::require_model_predictor(p, e.field, "fs_score"), e.a, e.b);
    return score;
}

struct BestCutoffResult {
    double cutoff;
    ErrorPair errors;
};

// Minimizes type I + type II error over candidate thresholds placed at
// midpoints between consecutive distinct values, plus one candidate below the
// minimum and one above the maximum. Ties break toward the smallest cutoff.
// Candidates adjacent to +-inf values fall back to finite offsets of the
// neighbouring value; classification is by strict comparison either way.
inline BestCutoffResult best_cutoff(std::span<const double> values,
                                    std::span<const Label> labels) {
    detail::check_scores(values, labels, "best_cutoff");

    std::size_t n_bad = 0, n_good = 0;
    for (Label l : labels) (l == Label::Bad ? n_bad : n_good)++;

    std::vector<std::pair<double, Label>> sorted(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sorted[i] = {values[i], labels[i]};
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<double> distinct;
    for (const auto& [v, l] : sorted)
        if (distinct.empty() || distinct.back() != v) distinct.push_back(v);

    auto between = [](double lo, double hi) {
        if (std::isinf(lo) && std::isinf(hi)) return 0.0;
        if (std::isinf(lo)) return hi - 1.0;
        if (std::isinf(hi)) return lo + 1.0;
        return (lo + hi) / 2.0;
    };

    std::vector<double> candidates;
    if (distinct.size() == 1) {
        const double v = distinct.front();
        candidates = {std::isinf(v) ? v : v - 1.0, std::isinf(v) ? v : v + 1.0};
    } else {
        const double lo = distinct.front(), hi = distinct.back();
        const double first_gap = distinct[1] - lo;
        const double last_gap = hi - distinct[distinct.size() - 2];
        if (std::isinf(lo))
            candidates.push_back(lo);
        else
            candidates.push_back(lo - (std::isfinite(first_gap) ? first_gap / 2.0 : 1.0));
        for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
            candidates.push_back(between(distinct[i], distinct[i + 1]));
        if (std::isinf(hi))
            candidates.push_back(hi);
        else
            candidates.push_back(hi + (std::isfinite(last_gap) ? last_gap / 2.0 : 1.0));
    }

    // Single ascending sweep: cum counts of cases <= candidate give both rates.
    BestCutoffResult best{0.0, {2.0, 2.0}};
    std::size_t pos = 0, cum_bad = 0, cum_good = 0;
    double best_total = std::numeric_limits<double>::infinity();
    for (double c : candidates) {
        while (pos < sorted.size() && !(sorted[pos].first > c)) {
            (sorted[pos].second == Label::Bad ? cum_bad : cum_good)++;
            ++pos;
        }
        ErrorPair e{double(n_bad - cum_bad) / double(n_bad), double(cum_good) / double(n_good)};
        if (e.total() < best_total) {
            best_total = e.total();
            best = {c, e};
        }
    }
    return best;
}

}  // namespace fscore
