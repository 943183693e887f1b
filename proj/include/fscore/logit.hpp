// Binary logistic models over raw ratios or fuzzy-transformed predictors.
//
// Evaluation uses the published coefficient sets or fitted ones; fitting is
// plain maximum likelihood (target 1 = BAD) via Newton iterations with step
// halving, no regularization. Separation is flagged, not penalized.

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fscore/labeling.hpp"
#include "fscore/ratios.hpp"
#include "fscore/scoring.hpp"

namespace fscore {

class undefined_model_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

enum class PredictorSpace { Raw, Fuzzy };

inline std::string_view to_string(PredictorSpace s) {
    return s == PredictorSpace::Raw ? "RAW" : "FUZZY";
}

struct LogitModel {
    PredictorSpace space{PredictorSpace::Raw};
    double intercept{};
    std::vector<std::pair<std::string, double>> coefficients;  // model order
    FuzzySpec fuzzy;  // used when space == Fuzzy

    void validate() const {
        if (coefficients.size() != model_predictor_names.size())
            throw std::invalid_argument("LogitModel: expected exactly 4 coefficients");
        if (!std::isfinite(intercept))
            throw std::invalid_argument("LogitModel: non-finite intercept");
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            if (coefficients[i].first != model_predictor_names[i])
                throw std::invalid_argument("LogitModel: coefficient " + std::to_string(i) +
                                            " must be '" +
                                            std::string(model_predictor_names[i]) + "'");
            if (!std::isfinite(coefficients[i].second))
                throw std::invalid_argument("LogitModel: non-finite coefficient for '" +
                                            coefficients[i].first + "'");
        }
        if (space == PredictorSpace::Fuzzy) fuzzy.validate();
    }
};

// Published raw-space coefficients (const, EBIT/I, LN(Sales), RE/A, E/TL).
inline LogitModel paper_raw_logit() {
    LogitModel m;
    m.space = PredictorSpace::Raw;
    m.intercept = 1.9808;
    m.coefficients = {{"ebit_to_interest", -0.1131},
                      {"ln_sales", -0.2431},
                      {"re_to_assets", -3.1491},
                      {"equity_to_tl", -2.0711}};
    return m;
}

// Published fuzzy-space coefficients with the published membership anchors.
inline LogitModel paper_fuzzy_logit() {
    LogitModel m;
    m.space = PredictorSpace::Fuzzy;
    m.intercept = -1.46645;
    m.coefficients = {{"ebit_to_interest", -6.21185},
                      {"ln_sales", -1.19298},
                      {"re_to_assets", -3.1798},
                      {"equity_to_tl", -5.09643}};
    m.fuzzy = paper_fuzzy_spec();
    return m;
}

// Overflow-safe logistic; exact 0/1 only beyond double range (|eta| > ~745).
inline double logistic(double eta) {
    if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

// Design-row extraction for one case: raw values or memberships.
inline std::vector<double> model_design_row(const LogitModel& m, const PredictorVector& p) {
    std::vector<double> row;
    row.reserve(m.coefficients.size());
    for (const auto& [field, coef] : m.coefficients) {
        (void)coef;
        const double x = detail::require_model_predictor(p, field, "logit_predict");
        if (m.space == PredictorSpace::Raw) {
            if (!std::isfinite(x))
                throw std::invalid_argument("logit_predict: non-finite '" + field +
                                            "' cannot enter a RAW-space model");
            row.push_back(x);
        } else {
            const auto& e = m.fuzzy.entry(field);
            row.push_back(membership(x, e.a, e.b));
        }
    }
    return row;
}

// Probability of default for one case.
inline double logit_predict(const LogitModel& m, const PredictorVector& p) {
    m.validate();
    double eta = m.intercept;
    const auto row = model_design_row(m, p);
    for (std::size_t i = 0; i < row.size(); ++i) eta += m.coefficients[i].second * row[i];
    return logistic(eta);
}

struct FitResult {
    std::vector<double> beta;  // [intercept, coefficients...]
    double log_likelihood{};
    int iterations{};
    double gradient_max_norm{};
    bool converged{};
    bool separation{};  // any |beta| > 30: quasi-complete separation suspected
};

namespace detail {

// Cholesky solve of a symmetric positive definite system; returns false when
// a pivot collapses (singular / not PD).
inline bool solve_spd(std::vector<double> a, std::vector<double> b, std::size_t n,
                      std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (!(sum > 0.0) || !std::isfinite(sum)) return false;
                a[i * n + i] = std::sqrt(sum);
            } else {
                a[i * n + j] = sum / a[j * n + j];
            }
        }
    }
    // forward then backward substitution
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= a[i * n + k] * b[k];
        b[i] = sum / a[i * n + i];
    }
    x.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) sum -= a[k * n + ii] * x[k];
        x[ii] = sum / a[ii * n + ii];
    }
    return true;
}

}  // namespace detail

// Bernoulli log-likelihood at beta = [intercept, b_1..b_k]; rows carry the k
// predictor values, the intercept column is implicit.
inline double logistic_log_likelihood(const std::vector<std::vector<double>>& rows,
                                      std::span<const int> y, std::span<const double> beta) {
    double ll = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double eta = beta[0];
        for (std::size_t j = 0; j < rows[i].size(); ++j) eta += beta[j + 1] * rows[i][j];
        // log p = -log(1+e^-eta), log(1-p) = -log(1+e^eta), both overflow-safe
        const double log1pexp = eta > 35.0 ? eta : std::log1p(std::exp(eta));
        ll += y[i] ? eta - log1pexp : -log1pexp;
    }
    return ll;
}

inline std::vector<double> logistic_gradient(const std::vector<std::vector<double>>& rows,
                                             std::span<const int> y,
                                             std::span<const double> beta) {
    std::vector<double> g(beta.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double eta = beta[0];
        for (std::size_t j = 0; j < rows[i].size(); ++j) eta += beta[j + 1] * rows[i][j];
        const double r = double(y[i]) - logistic(eta);
        g[0] += r;
        for (std::size_t j = 0; j < rows[i].size(); ++j) g[j + 1] += r * rows[i][j];
    }
    return g;
}

// Newton maximization of the Bernoulli log-likelihood with step halving.
// Converged when the gradient max-norm drops below tol. The design must be
// full rank including the implicit intercept column; a rank-deficient design
// names the offending column.
inline FitResult fit_logistic(const std::vector<std::vector<double>>& rows,
                              std::span<const int> y,
                              const std::vector<std::string>& column_names = {},
                              std::vector<double> start = {}, double tol = 1e-8,
                              int max_iter = 100) {
    const std::size_t n = rows.size();
    if (n == 0 || y.size() != n)
        throw std::invalid_argument("fit_logistic: empty design or size mismatch");
    const std::size_t k = rows[0].size() + 1;

    std::size_t bad = 0;
    for (int yi : y) bad += (yi != 0);
    if (bad == 0 || bad == n)
        throw undefined_model_error("fit_logistic: need at least one GOOD and one BAD case");

    auto column_name = [&](std::size_t j) {
        if (j == 0) return std::string("(intercept)");
        return j - 1 < column_names.size() ? column_names[j - 1]
                                           : "column " + std::to_string(j);
    };

    // Rank check on norm-scaled columns of the Gram matrix.
    {
        std::vector<double> norms(k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            norms[0] += 1.0;
            for (std::size_t j = 1; j < k; ++j) {
                if (!std::isfinite(rows[i][j - 1]))
                    throw std::invalid_argument("fit_logistic: non-finite value in column '" +
                                                column_name(j) + "'");
                norms[j] += rows[i][j - 1] * rows[i][j - 1];
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (norms[j] == 0.0)
                throw std::invalid_argument("fit_logistic: design rank-deficient, column '" +
                                            column_name(j) + "' is all zero");
            norms[j] = std::sqrt(norms[j]);
        }
        std::vector<double> gram(k * k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t a = 0; a < k; ++a) {
                const double va = (a == 0 ? 1.0 : rows[i][a - 1]) / norms[a];
                for (std::size_t b1 = a; b1 < k; ++b1) {
                    const double vb = (b1 == 0 ? 1.0 : rows[i][b1 - 1]) / norms[b1];
                    gram[a * k + b1] += va * vb;
                }
            }
        }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b1 = 0; b1 < a; ++b1) gram[a * k + b1] = gram[b1 * k + a];
        // Cholesky with pivot threshold: a tiny pivot means the column is a
        // near-exact combination of the previous ones.
        std::vector<double> chol = gram;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double sum = chol[i * k + j];
                for (std::size_t kk = 0; kk < j; ++kk)
                    sum -= chol[i * k + kk] * chol[j * k + kk];
                if (i == j) {
                    if (sum < 1e-9 * gram[i * k + i])
                        throw std::invalid_argument(
                            "fit_logistic: design rank-deficient, column '" + column_name(i) +
                            "' is collinear with earlier columns");
                    chol[i * k + i] = std::sqrt(sum);
                } else {
                    chol[i * k + j] = sum / chol[j * k + j];
                }
            }
        }
    }

    std::vector<double> beta = start.empty() ? std::vector<double>(k, 0.0) : std::move(start);
    if (beta.size() != k) throw std::invalid_argument("fit_logistic: bad start vector size");

    FitResult res;
    double ll = logistic_log_likelihood(rows, y, beta);
    std::vector<double> grad;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        grad = logistic_gradient(rows, y, beta);
        double gmax = 0.0;
        for (double g : grad) gmax = std::max(gmax, std::abs(g));
        res.gradient_max_norm = gmax;
        if (gmax < tol) {
            res.converged = true;
            break;
        }

        // Hessian of -ll: X^T W X with W = diag(p(1-p))
        std::vector<double> h(k * k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double eta = beta[0];
            for (std::size_t j = 1; j < k; ++j) eta += beta[j] * rows[i][j - 1];
            const double p = logistic(eta);
            const double w = p * (1.0 - p);
            for (std::size_t a = 0; a < k; ++a) {
                const double va = a == 0 ? 1.0 : rows[i][a - 1];
                for (std::size_t b1 = a; b1 < k; ++b1) {
                    const double vb = b1 == 0 ? 1.0 : rows[i][b1 - 1];
                    h[a * k + b1] += w * va * vb;
                }
            }
        }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b1 = 0; b1 < a; ++b1) h[a * k + b1] = h[b1 * k + a];

        std::vector<double> step;
        if (!detail::solve_spd(h, grad, k, step)) break;  // weights underflowed: separation path

        // Step halving keeps the ascent global on the concave likelihood.
        double scale = 1.0;
        std::vector<double> trial(k);
        double trial_ll = -std::numeric_limits<double>::infinity();
        for (int half = 0; half < 40; ++half) {
            for (std::size_t j = 0; j < k; ++j) trial[j] = beta[j] + scale * step[j];
            trial_ll = logistic_log_likelihood(rows, y, trial);
            if (trial_ll >= ll - 1e-12) break;
            scale *= 0.5;
        }
        beta = trial;
        ll = trial_ll;
    }

    res.beta = beta;
    res.log_likelihood = ll;
    res.iterations = iter;
    for (double b : beta)
        if (std::abs(b) > 30.0) res.separation = true;
    return res;
}

struct LogitFit {
    LogitModel model;
    FitResult diagnostics;
    std::size_t n_cases{};
};

// Fit over labeled cases in the chosen space. RAW designs cannot absorb
// +-inf coverage ratios; exclude those cases first (the CLI does).
inline LogitFit fit_logit(const std::vector<LabeledCase>& cases, PredictorSpace space,
                          const FuzzySpec& fuzzy = paper_fuzzy_spec()) {
    if (space == PredictorSpace::Fuzzy) fuzzy.validate();

    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    rows.reserve(cases.size());
    y.reserve(cases.size());
    std::vector<std::string> names;
    for (auto n : model_predictor_names) names.emplace_back(n);

    for (const auto& c : cases) {
        std::vector<double> row;
        row.reserve(4);
        for (auto field : model_predictor_names) {
            const double x = detail::require_model_predictor(c.predictors, field, "fit_logit");
            if (space == PredictorSpace::Raw) {
                if (!std::isfinite(x))
                    throw std::invalid_argument(
                        "fit_logit: non-finite '" + std::string(field) + "' for company '" +
                        c.company_id + "' cannot enter a RAW-space design");
                row.push_back(x);
            } else {
                const auto& e = fuzzy.entry(field);
                row.push_back(membership(x, e.a, e.b));
            }
        }
        rows.push_back(std::move(row));
        y.push_back(c.label == Label::Bad ? 1 : 0);
    }

    LogitFit fit;
    fit.diagnostics = fit_logistic(rows, y, names);
    fit.n_cases = rows.size();
    fit.model.space = space;
    fit.model.intercept = fit.diagnostics.beta[0];
    for (std::size_t i = 0; i < model_predictor_names.size(); ++i)
        fit.model.coefficients.emplace_back(std::string(model_predictor_names[i]),
                                            fit.diagnostics.beta[i + 1]);
    if (space == PredictorSpace::Fuzzy) fit.model.fuzzy = fuzzy;
    return fit;
}

}  // namespace fscore
