// Test-only oracles, kept independent of the library's production paths.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "fscore/rng.hpp"
#include "fscore/statement.hpp"

namespace oracle {

// Mann-Whitney route: Gini from explicit enumeration of all bad x good
// pairs, ties counted half.
inline double pairwise_gini(std::span<const double> scores, std::span<const fscore::Label> labels) {
    std::vector<double> bads, goods;
    for (std::size_t i = 0; i < scores.size(); ++i)
        (labels[i] == fscore::Label::Bad ? bads : goods).push_back(scores[i]);
    double wins = 0.0;
    for (double b : bads)
        for (double g : goods) {
            if (b < g) wins += 1.0;
            else if (b == g) wins += 0.5;
        }
    const double auc = wins / (double(bads.size()) * double(goods.size()));
    return 2.0 * auc - 1.0;
}

// Direct error counting at one threshold (score > cutoff => GOOD).
inline std::pair<double, double> errors_at(std::span<const double> values,
                                           std::span<const fscore::Label> labels, double cutoff) {
    double nb = 0, ng = 0, missed = 0, alarm = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (labels[i] == fscore::Label::Bad) {
            nb += 1;
            if (values[i] > cutoff) missed += 1;
        } else {
            ng += 1;
            if (!(values[i] > cutoff)) alarm += 1;
        }
    }
    return {missed / nb, alarm / ng};
}

// Exhaustive scan over the same candidate grid best_cutoff declares, with
// per-candidate error counting done independently.
inline std::vector<double> cutoff_candidates(std::span<const double> values) {
    std::vector<double> distinct(values.begin(), values.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<double> cands;
    if (distinct.size() == 1) {
        const double v = distinct.front();
        return {std::isinf(v) ? v : v - 1.0, std::isinf(v) ? v : v + 1.0};
    }
    const double lo = distinct.front(), hi = distinct.back();
    const double fg = distinct[1] - lo, lg = hi - distinct[distinct.size() - 2];
    cands.push_back(std::isinf(lo) ? lo : lo - (std::isfinite(fg) ? fg / 2.0 : 1.0));
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        const double a = distinct[i], b = distinct[i + 1];
        if (std::isinf(a) && std::isinf(b)) cands.push_back(0.0);
        else if (std::isinf(a)) cands.push_back(b - 1.0);
        else if (std::isinf(b)) cands.push_back(a + 1.0);
        else cands.push_back((a + b) / 2.0);
    }
    cands.push_back(std::isinf(hi) ? hi : hi + (std::isfinite(lg) ? lg / 2.0 : 1.0));
    return cands;
}

inline double exhaustive_best_total_error(std::span<const double> values,
                                          std::span<const fscore::Label> labels) {
    double best = std::numeric_limits<double>::infinity();
    for (double c : cutoff_candidates(values)) {
        const auto [t1, t2] = errors_at(values, labels, c);
        best = std::min(best, t1 + t2);
    }
    return best;
}

// Central finite differences of a scalar function of a coefficient vector.
template <typename F>
inline std::vector<double> fd_gradient(F&& f, std::vector<double> beta, double step = 1e-5) {
    std::vector<double> g(beta.size());
    for (std::size_t j = 0; j < beta.size(); ++j) {
        const double keep = beta[j];
        beta[j] = keep + step;
        const double up = f(beta);
        beta[j] = keep - step;
        const double dn = f(beta);
        beta[j] = keep;
        g[j] = (up - dn) / (2.0 * step);
    }
    return g;
}

// Random labeled sample with injected ties and the occasional infinity;
// guarantees both classes.
inline void random_scored_sample(fscore::Rng& rng, std::size_t max_n, bool allow_inf,
                                 std::vector<double>& scores,
                                 std::vector<fscore::Label>& labels) {
    const std::size_t n = 2 + std::size_t(rng.uniform_int(0, int(max_n) - 2));
    scores.clear();
    labels.clear();
    for (std::size_t i = 0; i < n; ++i) {
        double v;
        const double u = rng.uniform();
        if (u < 0.4) v = double(rng.uniform_int(-5, 5));  // heavy ties
        else if (allow_inf && u < 0.45)
            v = rng.bernoulli(0.5) ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
        else
            v = rng.normal(0.0, 2.0);
        scores.push_back(v);
        labels.push_back(rng.bernoulli(0.35) ? fscore::Label::Bad : fscore::Label::Good);
    }
    labels[0] = fscore::Label::Bad;  // ensure both classes
    labels[n - 1] = fscore::Label::Good;
}

}  // namespace oracle
