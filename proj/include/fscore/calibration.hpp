// External-rating reduction and FS-Score calibration to a five-grade
// internal scale.
//
// Agency ratings are reduced to A, BBB, BB, B, CCC/C (plus a statistics-only
// DEFAULTED bucket). Internal grade cut-offs sit midway between adjacent
// grade centers; the published table is shipped verbatim as the default
// mapping. The rule of thumb the scale encodes: FS-Score ~ number of B
// letters in the external rating.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fscore/metrics.hpp"
#include "fscore/statement.hpp"

namespace fscore {

enum class Grade { A, BBB, BB, B, CCC_C, Defaulted };

inline constexpr std::array<Grade, 6> all_grades{Grade::A,     Grade::BBB, Grade::BB,
                                                 Grade::B,     Grade::CCC_C,
                                                 Grade::Defaulted};

inline std::string_view to_string(Grade g) {
    switch (g) {
        case Grade::A: return "A";
        case Grade::BBB: return "BBB";
        case Grade::BB: return "BB";
        case Grade::B: return "B";
        case Grade::CCC_C: return "CCC/C";
        case Grade::Defaulted: return "DEFAULTED";
    }
    return "?";
}

inline std::optional<Grade> parse_grade(std::string_view s) {
    for (Grade g : all_grades)
        if (s == to_string(g)) return g;
    return std::nullopt;
}

namespace detail {

inline std::string normalize_rating(std::string_view raw) {
    std::string t;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(char(std::toupper(static_cast<unsigned char>(c))));
    // strip one trailing notch modifier: +/- (S&P, Fitch) or 1/2/3 (Moody's)
    if (!t.empty() && (t.back() == '+' || t.back() == '-' || t.back() == '1' ||
                       t.back() == '2' || t.back() == '3'))
        t.pop_back();
    return t;
}

}  // namespace detail

// Long-term issuer grade reduction. Recognizes S&P/Fitch letter grades,
// Moody's grades via the standard scale equivalence, default statuses, and
// already-reduced grades (the reduction is idempotent).
inline Grade reduce_external_rating(Agency agency, std::string_view raw) {
    const std::string t = detail::normalize_rating(raw);
    static const std::map<std::string, Grade, std::less<>> table = {
        // S&P / Fitch letters (AAA/AA/A fold to A; CCC/CC/C fold to CCC/C)
        {"AAA", Grade::A},     {"AA", Grade::A},      {"A", Grade::A},
        {"BBB", Grade::BBB},   {"BB", Grade::BB},     {"B", Grade::B},
        {"CCC", Grade::CCC_C}, {"CC", Grade::CCC_C},  {"C", Grade::CCC_C},
        // Moody's letters, upper-cased (Aaa..Ca map via S&P equivalence)
        {"BAA", Grade::BBB},   {"BA", Grade::BB},     {"CAA", Grade::CCC_C},
        {"CA", Grade::CCC_C},
        // default statuses and reduced names
        {"D", Grade::Defaulted},   {"SD", Grade::Defaulted}, {"RD", Grade::Defaulted},
        {"CCC/C", Grade::CCC_C},   {"DEFAULTED", Grade::Defaulted},
    };
    auto it = table.find(t);
    if (it == table.end())
        throw std::invalid_argument("reduce_external_rating: unrecognized " +
                                    std::string(to_string(agency)) + " grade '" +
                                    std::string(raw) + "'");
    return it->second;
}

// Built-in reduction table, overridable per (agency, raw string) from a CSV.
class RatingReducer {
  public:
    void add_override(Agency agency, std::string raw, Grade grade) {
        overrides_[key(agency, detail::normalize_rating(raw))] = grade;
    }

    Grade reduce(Agency agency, std::string_view raw) const {
        auto it = overrides_.find(key(agency, detail::normalize_rating(raw)));
        if (it != overrides_.end()) return it->second;
        return reduce_external_rating(agency, raw);
    }

  private:
    static std::string key(Agency a, std::string_view normalized) {
        return std::string(to_string(a)) + ":" + std::string(normalized);
    }
    std::map<std::string, Grade, std::less<>> overrides_;
};

struct QuartileStats {
    double p25;
    double median;
    double p75;
};

// Quantile by linear interpolation between closest order statistics
// (h = (n-1)p; x[floor(h)] + frac(h) * (x[floor(h)+1] - x[floor(h)])).
inline double quantile(std::vector<double> sorted_values, double p) {
    auto& v = sorted_values;
    if (v.empty()) throw std::invalid_argument("quantile: empty input");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0,1]");
    const double h = (double(v.size()) - 1.0) * p;
    const std::size_t lo = std::size_t(std::floor(h));
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + (h - double(lo)) * (v[lo + 1] - v[lo]);
}

inline QuartileStats quartiles(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("quartiles: empty input");
    std::sort(values.begin(), values.end());
    return {quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75)};
}

// Per-grade quartile statistics of FS-Scores.
inline std::map<Grade, QuartileStats> grade_statistics(
    const std::map<Grade, std::vector<double>>& fs_by_grade) {
    std::map<Grade, QuartileStats> out;
    for (const auto& [grade, values] : fs_by_grade) {
        if (values.empty())
            throw undefined_metric_error("grade_statistics: empty bucket for grade '" +
                                         std::string(to_string(grade)) + "'");
        out.emplace(grade, quartiles(values));
    }
    return out;
}

struct RatingBucket {
    std::string grade;  // internal name, e.g. "fsBB"
    double left;
    double center;
    double right;  // +inf for an unbounded top bucket
};

struct InternalRatingSpec {
    std::vector<RatingBucket> buckets;  // safest first

    void validate() const {
        if (buckets.empty()) throw std::invalid_argument("InternalRatingSpec: no buckets");
        for (std::size_t i = 0; i < buckets.size(); ++i) {
            const auto& b = buckets[i];
            if (!(b.left < b.right))
                throw std::invalid_argument("InternalRatingSpec: bucket '" + b.grade +
                                            "' has left >= right");
            if (b.center < b.left || b.center > b.right)
                throw std::invalid_argument("InternalRatingSpec: bucket '" + b.grade +
                                            "' center outside [left, right]");
            if (i + 1 < buckets.size() && buckets[i + 1].right != b.left)
                throw std::invalid_argument("InternalRatingSpec: buckets '" + b.grade +
                                            "' and '" + buckets[i + 1].grade +
                                            "' are not contiguous");
        }
        if (buckets.back().left != 0.0)
            throw std::invalid_argument("InternalRatingSpec: bottom bucket must start at 0");
    }
};

// The published internal-grade table. The fsB left cut-off is the published
// 0.4, not the pure midpoint 0.575; derive_cutoffs reproduces the midpoint
// methodology when rebuilding from centers.
inline InternalRatingSpec published_internal_ratings() {
    InternalRatingSpec spec;
    spec.buckets = {{"fsBBB", 2.5, 3.0, 3.5},
                    {"fsBB", 1.5, 2.0, 2.5},
                    {"fsB", 0.4, 1.0, 1.5},
                    {"fsCCC/C", 0.075, 0.15, 0.4},
                    {"fsD", 0.0, 0.0, 0.075}};
    return spec;
}

// Internal boundaries at midpoints of adjacent centers; top bucket unbounded
// above, bottom bucket anchored at 0.
inline InternalRatingSpec derive_cutoffs(
    const std::vector<std::pair<std::string, double>>& centers) {
    if (centers.size() < 2)
        throw std::invalid_argument("derive_cutoffs: need at least two grade centers");
    for (std::size_t i = 0; i + 1 < centers.size(); ++i)
        if (!(centers[i].second > centers[i + 1].second))
            throw std::invalid_argument(
                "derive_cutoffs: centers must strictly decrease (violated at '" +
                centers[i + 1].first + "')");
    if (centers.back().second < 0.0)
        throw std::invalid_argument("derive_cutoffs: centers must be non-negative");

    InternalRatingSpec spec;
    double right = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double left = i + 1 < centers.size()
                                ? (centers[i].second + centers[i + 1].second) / 2.0
                                : 0.0;
        spec.buckets.push_back({centers[i].first, left, centers[i].second, right});
        right = left;
    }
    spec.validate();
    return spec;
}

// Bucket lookup over [left, right) intervals; the top bucket absorbs every
// fs at or above its left cut-off (FS tops out at 4 while the published top
// bucket nominally ends at 3.5).
inline std::string map_fs_to_grade(double fs, const InternalRatingSpec& spec) {
    spec.validate();
    if (!(fs >= 0.0 && fs <= 4.0))
        throw std::invalid_argument("map_fs_to_grade: fs outside [0,4]");
    if (fs >= spec.buckets.front().left) return spec.buckets.front().grade;
    for (std::size_t i = 1; i < spec.buckets.size(); ++i)
        if (fs >= spec.buckets[i].left) return spec.buckets[i].grade;
    return spec.buckets.back().grade;  // fs == 0 lands here via left == 0
}

}  // namespace fscore
