// Discrimination and distribution metrics: ROC curves, the Gini accuracy
// ratio, misclassification errors, Pearson correlations, the first principal
// component's variance share, and empirical CDFs.
//
// Orientation convention, fixed across the library: scores increase with
// creditworthiness and BAD is the positive class of the ROC sweep. A
// threshold t flags score <= t as bad, so the curve runs from (0,0) to (1,1)
// as t grows. Ties are grouped into single sweep steps, which makes the
// trapezoidal area equal to P(score_bad < score_good) + 1/2 P(tie).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fscore/ratios.hpp"
#include "fscore/statement.hpp"

namespace fscore {

// Raised when a metric has no defined value on the given sample, e.g. a
// single-class label vector or a zero-variance column.
class undefined_metric_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct RocPoint {
    double fpr;  // fraction of GOOD flagged bad
    double tpr;  // fraction of BAD flagged bad
};

struct RocCurve {
    std::vector<RocPoint> points;  // (0,0) .. (1,1), both coordinates non-decreasing
};

struct ErrorPair {
    double type1;  // missed defaults: BAD classified GOOD
    double type2;  // false alarms: GOOD classified BAD
    double total() const { return type1 + type2; }
};

namespace detail {

inline void check_two_classes(std::span<const Label> labels, const char* who) {
    std::size_t bad = 0;
    for (Label l : labels)
        if (l == Label::Bad) ++bad;
    if (bad == 0 || bad == labels.size())
        throw undefined_metric_error(std::string(who) + ": need at least one GOOD and one BAD case");
}

inline void check_scores(std::span<const double> scores, std::span<const Label> labels,
                         const char* who) {
    if (scores.size() != labels.size())
        throw std::invalid_argument(std::string(who) + ": scores/labels size mismatch");
    for (double s : scores)
        if (std::isnan(s)) throw std::invalid_argument(std::string(who) + ": NaN score");
    check_two_classes(labels, who);
}

}  // namespace detail

// One point per distinct score value; +-inf scores are legal and sort beyond
// all finite values.
inline RocCurve roc_curve(std::span<const double> scores, std::span<const Label> labels) {
    detail::check_scores(scores, labels, "roc_curve");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    std::size_t n_bad = 0, n_good = 0;
    for (Label l : labels) (l == Label::Bad ? n_bad : n_good)++;

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    std::size_t cum_bad = 0, cum_good = 0, i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k)
            (labels[order[k]] == Label::Bad ? cum_bad : cum_good)++;
        curve.points.push_back({double(cum_good) / double(n_good), double(cum_bad) / double(n_bad)});
        i = j;
    }
    return curve;
}

inline double auc_trapezoid(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

// Gini accuracy ratio, 2*AUC - 1, via trapezoidal integration of the grouped
// ROC sweep. Depends only on score order, so any strictly increasing
// transform of the scores leaves it unchanged.
inline double gini_ar(std::span<const double> scores, std::span<const Label> labels) {
    return 2.0 * auc_trapezoid(roc_curve(scores, labels)) - 1.0;
}

// Classification rule: score > cutoff => GOOD.
inline ErrorPair classification_errors(std::span<const double> scores,
                                       std::span<const Label> labels, double cutoff) {
    detail::check_scores(scores, labels, "classification_errors");
    std::size_t n_bad = 0, n_good = 0, missed = 0, false_alarm = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] == Label::Bad) {
            ++n_bad;
            if (scores[i] > cutoff) ++missed;
        } else {
            ++n_good;
            if (!(scores[i] > cutoff)) ++false_alarm;
        }
    }
    return {double(missed) / double(n_bad), double(false_alarm) / double(n_good)};
}

struct SquareMatrix {
    std::size_t n = 0;
    std::vector<double> data;  // row-major

    explicit SquareMatrix(std::size_t size = 0) : n(size), data(size * size, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw undefined_metric_error("pearson: need at least 3 paired observations");
    const double n = double(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw undefined_metric_error("pearson: zero-variance input");
    return sxy / std::sqrt(sxx * syy);
}

// Pearson correlations over cases where every selected field is present and
// finite (an infinite coverage ratio has no place in a product-moment).
inline SquareMatrix correlation_matrix(const std::vector<PredictorVector>& vectors,
                                       std::span<const std::string_view> fields) {
    std::vector<std::vector<double>> cols(fields.size());
    for (const auto& v : vectors) {
        std::vector<double> row;
        row.reserve(fields.size());
        bool complete = true;
        for (auto f : fields) {
            auto val = predictor_value(v, f);
            if (!val || !std::isfinite(*val)) {
                complete = false;
                break;
            }
            row.push_back(*val);
        }
        if (!complete) continue;
        for (std::size_t j = 0; j < fields.size(); ++j) cols[j].push_back(row[j]);
    }
    if (cols.empty() || cols[0].size() < 3)
        throw undefined_metric_error("correlation_matrix: need at least 3 complete cases");

    for (std::size_t j = 0; j < fields.size(); ++j) {
        const auto& c = cols[j];
        const double mean = std::accumulate(c.begin(), c.end(), 0.0) / double(c.size());
        double var = 0;
        for (double v : c) var += (v - mean) * (v - mean);
        if (var == 0.0)
            throw undefined_metric_error("correlation_matrix: zero variance in field '" +
                                         std::string(fields[j]) + "'");
    }

    SquareMatrix m(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        m.at(i, i) = 1.0;
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            const double r = pearson(cols[i], cols[j]);
            m.at(i, j) = r;
            m.at(j, i) = r;
        }
    }
    return m;
}

namespace detail {

// Cyclic Jacobi rotations; plenty for the small dense symmetric matrices here.
inline std::vector<double> symmetric_eigenvalues(SquareMatrix a, double tol = 1e-12) {
    const std::size_t n = a.n;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (off < tol * tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a.at(p, q)) < 1e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * a.at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace detail

// lambda_max / trace of a correlation matrix. Input must be symmetric with a
// unit diagonal and positive semi-definite within 1e-9.
inline double first_pc_variance_share(const SquareMatrix& corr) {
    const std::size_t n = corr.n;
    if (n == 0 || corr.data.size() != n * n)
        throw std::invalid_argument("first_pc_variance_share: empty or malformed matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(corr.at(i, i) - 1.0) > 1e-9)
            throw std::invalid_argument("first_pc_variance_share: diagonal entry != 1");
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(corr.at(i, j) - corr.at(j, i)) > 1e-9)
                throw std::invalid_argument("first_pc_variance_share: asymmetric input");
    }
    const auto eig = detail::symmetric_eigenvalues(corr, 1e-10);
    if (eig.front() < -1e-9)
        throw std::invalid_argument("first_pc_variance_share: matrix not positive semi-definite");
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += corr.at(i, i);
    return eig.back() / trace;
}

// Right-continuous ECDF as sorted (x, F(x)) pairs, one per distinct value.
inline std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("empirical_cdf: empty input");
    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, double>> steps;
    const double n = double(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        steps.emplace_back(values[i], double(i + 1) / n);
    }
    return steps;
}

}  // namespace fscore
