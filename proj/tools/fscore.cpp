// fscore command-line tool.
//
// Subcommands cover the whole pipeline: synth -> ingest -> label -> analyze
// -> fit -> score -> calibrate -> report. Commands communicate through plain
// files (CSV/TSV/JSON); diagnostics go to stderr, data to files or stdout.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fscore/fscore.hpp"

namespace fs = std::filesystem;
using namespace fscore;

namespace {

// ---------------------------------------------------------------- utilities

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

std::string now_iso8601() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// 10 significant digits for plot data files
std::string tsv_num(double v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    return std::string(buf, r.ptr);
}

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", v * 100.0);
    return buf;
}

std::vector<FinancialStatement> load_statements(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return csv::read_statements(in);
}

std::vector<DefaultEvent> load_defaults(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return csv::read_defaults(in);
}

std::vector<RatingRecord> load_ratings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return csv::read_ratings(in);
}

ModelFile load_model(const std::string& path) {
    if (path.empty()) return paper_model();  // built-in published tables
    return model_from_json(read_file(path));
}

void print_warnings(const LabelingResult& r) {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

void write_tsv_pairs(const fs::path& path, const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream out;
    for (const auto& [x, y] : rows) out << tsv_num(x) << '\t' << tsv_num(y) << '\n';
    write_file(path, out.str());
}

void write_roc_tsv(const fs::path& path, const RocCurve& curve) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(curve.points.size());
    for (const auto& p : curve.points) rows.emplace_back(p.fpr, p.tpr);
    write_tsv_pairs(path, rows);
}

std::string sanitize(std::string_view name) {
    std::string out;
    for (char c : name) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

// Safety-oriented model scores for one case (higher = safer). pd entries are
// negated so every column shares the orientation.
struct CaseScores {
    double s;
    double fs;
    std::optional<double> neg_pd_raw;  // missing when a raw ratio is +-inf
    double neg_pd_fuzzy;
};

CaseScores case_scores(const ModelFile& m, const PredictorVector& p) {
    CaseScores cs{};
    cs.s = double(s_score(p, m.cutoffs));
    cs.fs = fs_score(p, m.fuzzy);
    cs.neg_pd_fuzzy = -logit_predict(m.logit_fuzzy, p);
    bool raw_ok = true;
    for (auto field : model_predictor_names) {
        const auto v = predictor_value(p, field);
        if (!v || !std::isfinite(*v)) raw_ok = false;
    }
    if (raw_ok) cs.neg_pd_raw = -logit_predict(m.logit_raw, p);
    return cs;
}

// ------------------------------------------------------------------- synth

int run_synth(std::uint64_t seed, int companies, const std::string& out_dir) {
    const auto data = generate_synthetic_dataset(seed, companies, paper_fuzzy_logit(),
                                                 paper_fuzzy_spec());
    fs::create_directories(out_dir);
    {
        std::ostringstream s;
        csv::write_statements(s, data.statements);
        write_file(fs::path(out_dir) / "statements.csv", s.str());
    }
    {
        std::ostringstream s;
        csv::write_defaults(s, data.defaults);
        write_file(fs::path(out_dir) / "defaults.csv", s.str());
    }
    {
        std::ostringstream s;
        csv::write_ratings(s, data.ratings);
        write_file(fs::path(out_dir) / "ratings.csv", s.str());
    }
    std::cerr << "synth: " << data.statements.size() << " statements, " << data.defaults.size()
              << " default events (" << data.real_default_count << " real), "
              << data.ratings.size() << " ratings for " << companies << " companies\n"
              << "synth: mean predicted PD " << pct(data.mean_predicted_pd)
              << ", realized default share "
              << pct(double(data.real_default_count) / companies) << "\n";
    return 0;
}

// ------------------------------------------------------------------ ingest

int run_ingest(const std::string& statements_path, const std::string& defaults_path,
               const std::string& ratings_path) {
    const auto statements = load_statements(statements_path);
    std::set<std::string> companies;
    std::map<std::pair<std::string, Date>, int> seen;
    std::vector<std::string> dups;
    Date lo{}, hi{};
    for (const auto& s : statements) {
        companies.insert(s.company_id);
        if (++seen[{s.company_id, s.period_end}] == 2)
            dups.push_back(s.company_id + "/" + format_date(s.period_end));
        if (statements.size() && (lo == Date{} || s.period_end < lo)) lo = s.period_end;
        if (hi == Date{} || hi < s.period_end) hi = s.period_end;
    }
    std::size_t usable = 0;
    for (const auto& s : statements)
        if (has_model_predictors(compute_predictors(s))) ++usable;

    std::cout << "statements: " << statements.size() << " rows, " << companies.size()
              << " companies, " << format_date(lo) << " .. " << format_date(hi) << " (digest "
              << fnv1a_hex(read_file(statements_path)) << ")\n";
    std::cout << "usable cases: " << usable << " of " << statements.size()
              << " (model predictors present)\n";

    if (!defaults_path.empty()) {
        const auto defaults = load_defaults(defaults_path);
        std::size_t real = 0;
        std::set<std::string> def_companies, unknown;
        for (const auto& d : defaults) {
            real += d.kind == DefaultKind::Real;
            def_companies.insert(d.company_id);
            if (!companies.count(d.company_id)) unknown.insert(d.company_id);
        }
        std::cout << "defaults: " << defaults.size() << " events (" << real << " REAL, "
                  << defaults.size() - real << " TECHNICAL), " << def_companies.size()
                  << " companies (digest " << fnv1a_hex(read_file(defaults_path)) << ")\n";
        for (const auto& c : unknown)
            std::cerr << "warning: default event for unknown company '" << c << "'\n";
    }
    if (!ratings_path.empty()) {
        const auto ratings = load_ratings(ratings_path);
        std::set<std::string> rated;
        std::size_t reducible = 0;
        for (const auto& r : ratings) {
            rated.insert(r.company_id);
            try {
                reduce_external_rating(r.agency, r.grade);
                ++reducible;
            } catch (const std::invalid_argument& e) {
                std::cerr << "warning: " << e.what() << "\n";
            }
        }
        std::cout << "ratings: " << ratings.size() << " rows (" << reducible << " reducible), "
                  << rated.size() << " companies (digest " << fnv1a_hex(read_file(ratings_path))
                  << ")\n";
    }
    if (!dups.empty()) {
        std::cerr << "error: duplicate statement rows: ";
        for (std::size_t i = 0; i < dups.size(); ++i) std::cerr << (i ? ", " : "") << dups[i];
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

// ------------------------------------------------------------------- label

void write_labeled_csv(std::ostream& out, const std::vector<LabeledCase>& cases) {
    out << "company_id,period_end,period_type,availability_date,label";
    for (const auto& f : predictor_fields) out << ',' << f.name;
    out << '\n';
    for (const auto& c : cases) {
        out << csv::quote_if_needed(c.company_id) << ',' << format_date(c.period_end) << ','
            << to_string(c.period_type) << ',' << format_date(c.availability_date) << ','
            << to_string(c.label);
        for (const auto& f : predictor_fields) {
            const auto v = c.predictors.*(f.member);
            out << ',' << (v ? csv::format_number(*v) : std::string());
        }
        out << '\n';
    }
}

int run_label(const std::string& statements_path, const std::string& defaults_path,
              bool annualize, const std::string& out_path) {
    const auto labeled =
        label_cases(load_statements(statements_path), load_defaults(defaults_path), annualize);
    print_warnings(labeled);
    std::size_t bad = 0;
    for (const auto& c : labeled.cases) bad += c.label == Label::Bad;
    std::cerr << "label: " << labeled.cases.size() << " cases (" << bad << " BAD), "
              << labeled.excluded_incomplete << " excluded for missing predictors, "
              << labeled.dropped_post_default << " dropped post-default\n";
    std::ostringstream body;
    write_labeled_csv(body, labeled.cases);
    if (out_path.empty())
        std::cout << body.str();
    else
        write_file(out_path, body.str());
    return 0;
}

// ----------------------------------------------------------------- analyze

int run_analyze(const std::string& statements_path, const std::string& defaults_path,
                const std::string& out_dir) {
    const auto statements = load_statements(statements_path);
    const auto defaults = load_defaults(defaults_path);
    const auto annualized = label_cases(statements, defaults, true);
    const auto ytd = label_cases(statements, defaults, false);
    print_warnings(annualized);

    auto per_variable_gini = [](const std::vector<LabeledCase>& cases,
                                std::string_view field) -> std::pair<std::string, std::size_t> {
        std::vector<double> scores;
        std::vector<Label> labels;
        for (const auto& c : cases) {
            const auto v = predictor_value(c.predictors, field);
            if (!v || std::isnan(*v)) continue;
            scores.push_back(*v);
            labels.push_back(c.label);
        }
        try {
            return {pct(gini_ar(scores, labels)), scores.size()};
        } catch (const undefined_metric_error& e) {
            return {std::string("undefined (") + e.what() + ")", scores.size()};
        }
    };

    std::ostringstream tsv;
    tsv << "variable\tn\tgini_annualized\tgini_ytd\n";
    std::cout << "Per-variable in-sample Gini AR (higher score = safer case)\n";
    std::cout << "  variable                          n      annualized  ytd\n";
    for (const auto& f : predictor_fields) {
        const auto [g_ann, n_ann] = per_variable_gini(annualized.cases, f.name);
        const auto [g_ytd, n_ytd] = per_variable_gini(ytd.cases, f.name);
        (void)n_ytd;
        std::printf("  %-32s  %-6zu %-11s %s\n", std::string(f.display).c_str(), n_ann,
                    g_ann.c_str(), g_ytd.c_str());
        tsv << f.name << '\t' << n_ann << '\t' << g_ann << '\t' << g_ytd << '\n';
    }

    std::vector<PredictorVector> vectors;
    for (const auto& c : annualized.cases) vectors.push_back(c.predictors);
    std::cout << "\nCorrelation matrix, model predictors (annualized, finite complete cases)\n";
    std::ostringstream corr_tsv;
    try {
        const auto corr = correlation_matrix(
            vectors, std::span<const std::string_view>(model_predictor_names));
        std::cout << "  " << std::string(18, ' ');
        for (auto n : model_predictor_names) std::printf("%-18s", std::string(n).c_str());
        std::cout << "\n";
        corr_tsv << "field";
        for (auto n : model_predictor_names) corr_tsv << '\t' << n;
        corr_tsv << '\n';
        for (std::size_t i = 0; i < corr.n; ++i) {
            std::printf("  %-18s", std::string(model_predictor_names[i]).c_str());
            corr_tsv << model_predictor_names[i];
            for (std::size_t j = 0; j < corr.n; ++j) {
                std::printf("%-18.4f", corr.at(i, j));
                corr_tsv << '\t' << tsv_num(corr.at(i, j));
            }
            std::cout << "\n";
            corr_tsv << '\n';
        }
        const double share = first_pc_variance_share(corr);
        const bool pass = share < 0.5;
        std::cout << "\nFirst principal component variance share: " << pct(share) << " "
                  << (pass ? "PASS" : "WARN") << " (threshold 50%: no dimension reduction needed)"
                  << "\n";
        corr_tsv << "first_pc_share\t" << tsv_num(share) << "\t" << (pass ? "PASS" : "WARN")
                 << "\n";
    } catch (const undefined_metric_error& e) {
        std::cout << "  undefined: " << e.what() << "\n";
        corr_tsv << "undefined\t" << e.what() << '\n';
    }

    if (!out_dir.empty()) {
        write_file(fs::path(out_dir) / "predictor_power.tsv", tsv.str());
        write_file(fs::path(out_dir) / "correlation.tsv", corr_tsv.str());
    }
    return 0;
}

// --------------------------------------------------------------------- fit

// Cases raw logit can absorb: all four predictors finite.
std::vector<LabeledCase> raw_finite_cases(const std::vector<LabeledCase>& cases,
                                          std::size_t* excluded) {
    std::vector<LabeledCase> out;
    for (const auto& c : cases) {
        bool ok = true;
        for (auto field : model_predictor_names) {
            const auto v = predictor_value(c.predictors, field);
            if (!v || !std::isfinite(*v)) ok = false;
        }
        if (ok)
            out.push_back(c);
        else if (excluded)
            ++*excluded;
    }
    return out;
}

int run_fit(const std::string& statements_path, const std::string& defaults_path,
            const std::string& out_dir, std::string model_path, bool annualize,
            bool use_paper_anchors, bool use_paper_coefficients, std::uint64_t seed) {
    const auto statements = load_statements(statements_path);
    const auto defaults = load_defaults(defaults_path);
    const auto labeled = label_cases(statements, defaults, annualize);
    print_warnings(labeled);
    const auto& cases = labeled.cases;

    std::size_t n_bad = 0;
    for (const auto& c : cases) n_bad += c.label == Label::Bad;
    std::cerr << "fit: " << cases.size() << " cases, " << n_bad << " BAD\n";

    std::vector<Label> labels;
    for (const auto& c : cases) labels.push_back(c.label);

    // Per-predictor best cut-offs (always reported; used unless paper anchors
    // are requested).
    const auto paper_cut = paper_cutoff_spec();
    const auto paper_fz = paper_fuzzy_spec();
    CutoffSpec fitted_cut;
    std::cout << "Best cut-offs (minimum type I + type II error)\n";
    std::cout << "  predictor          fitted      type I  type II total   paper\n";
    for (std::size_t i = 0; i < model_predictor_names.size(); ++i) {
        const auto field = model_predictor_names[i];
        std::vector<double> values;
        for (const auto& c : cases) values.push_back(*predictor_value(c.predictors, field));
        const auto best = best_cutoff(values, labels);
        fitted_cut.entries.emplace_back(std::string(field), best.cutoff);
        std::printf("  %-18s %-11.6g %-7s %-7s %-7s %g\n", std::string(field).c_str(),
                    best.cutoff, pct(best.errors.type1).c_str(), pct(best.errors.type2).c_str(),
                    pct(best.errors.total()).c_str(), paper_cut.entries[i].second);
    }

    ModelFile model;
    model.annualize = annualize;
    if (use_paper_anchors) {
        model.cutoffs = paper_cut;
        model.fuzzy = paper_fz;
    } else {
        model.cutoffs = fitted_cut;
        // No data-driven b anchor is attempted: keep the published a->b width
        // on top of the fitted cut-off.
        for (std::size_t i = 0; i < fitted_cut.entries.size(); ++i) {
            const auto& pe = paper_fz.entries[i];
            model.fuzzy.entries.push_back(
                {pe.field, fitted_cut.entries[i].second,
                 fitted_cut.entries[i].second + (pe.b - pe.a)});
        }
    }
    model.cutoffs.validate();
    model.fuzzy.validate();

    // S-Score's own best cut-off, for the report
    {
        std::vector<double> s_values;
        for (const auto& c : cases) s_values.push_back(double(s_score(c.predictors, model.cutoffs)));
        const auto best = best_cutoff(s_values, labels);
        std::printf("  %-18s %-11.6g %-7s %-7s %-7s\n", "S-Score", best.cutoff,
                    pct(best.errors.type1).c_str(), pct(best.errors.type2).c_str(),
                    pct(best.errors.total()).c_str());
    }

    // Logit models
    std::size_t raw_excluded = 0;
    const auto raw_cases = raw_finite_cases(cases, &raw_excluded);
    if (raw_excluded)
        std::cerr << "fit: " << raw_excluded
                  << " cases with infinite coverage excluded from the RAW logit design\n";
    if (use_paper_coefficients) {
        model.logit_raw = paper_raw_logit();
        model.logit_fuzzy = paper_fuzzy_logit();
        model.logit_fuzzy.fuzzy = model.fuzzy;
    } else {
        const auto raw_fit = fit_logit(raw_cases, PredictorSpace::Raw);
        const auto fuzzy_fit = fit_logit(cases, PredictorSpace::Fuzzy, model.fuzzy);
        model.logit_raw = raw_fit.model;
        model.logit_fuzzy = fuzzy_fit.model;
        auto report = [](const char* name, const LogitFit& f) {
            std::cout << "\n" << name << " logit (target 1 = BAD): intercept "
                      << f.model.intercept;
            for (const auto& [field, b] : f.model.coefficients)
                std::cout << ", " << field << " " << b;
            std::cout << "\n  log-likelihood " << f.diagnostics.log_likelihood << ", "
                      << f.diagnostics.iterations << " iterations, gradient max-norm "
                      << f.diagnostics.gradient_max_norm
                      << (f.diagnostics.converged ? "" : " [NOT CONVERGED]")
                      << (f.diagnostics.separation ? " [SEPARATION SUSPECTED]" : "") << "\n";
        };
        report("RAW", raw_fit);
        report("FUZZY", fuzzy_fit);
        if (!raw_fit.diagnostics.converged || !fuzzy_fit.diagnostics.converged)
            throw std::runtime_error("fit: logit estimation did not converge");
    }
    model.internal_ratings = published_internal_ratings();

    // In-sample Gini comparison on the common scoreable subset
    {
        std::vector<double> s_v, fs_v, lr_v, lf_v;
        std::vector<Label> l_v;
        for (const auto& c : raw_cases) {
            const auto cs = case_scores(model, c.predictors);
            s_v.push_back(cs.s);
            fs_v.push_back(cs.fs);
            lr_v.push_back(*cs.neg_pd_raw);
            lf_v.push_back(cs.neg_pd_fuzzy);
            l_v.push_back(c.label);
        }
        std::cout << "\nIn-sample Gini AR (" << raw_cases.size() << " comparable cases)\n";
        std::printf("  %-10s %s\n", "S-Score", pct(gini_ar(s_v, l_v)).c_str());
        std::printf("  %-10s %s\n", "FS-Score", pct(gini_ar(fs_v, l_v)).c_str());
        std::printf("  %-10s %s\n", "Logit", pct(gini_ar(lr_v, l_v)).c_str());
        std::printf("  %-10s %s\n", "Logit-F", pct(gini_ar(lf_v, l_v)).c_str());
    }

    model.provenance.input_digest =
        fnv1a_hex(read_file(statements_path) + "\n" + read_file(defaults_path));
    model.provenance.fit_timestamp = now_iso8601();
    model.provenance.seed = seed;

    if (model_path.empty()) model_path = (fs::path(out_dir) / "model.json").string();
    write_file(model_path, to_json(model));
    std::cerr << "fit: model written to " << model_path << "\n";
    return 0;
}

// ------------------------------------------------------------------- score

int run_score(const std::string& model_path, const std::string& statements_path,
              const std::string& out_path) {
    const auto model = load_model(model_path);
    model.validate();
    const auto statements = load_statements(statements_path);

    std::ostringstream out;
    out << "company_id,period_end,period_type,status,s_score,fs_score,pd_raw,pd_fuzzy,"
           "internal_grade\n";
    std::size_t excluded = 0;
    for (const auto& s : statements) {
        const auto p = compute_predictors(s, model.annualize);
        out << csv::quote_if_needed(s.company_id) << ',' << format_date(s.period_end) << ','
            << to_string(s.period_type) << ',';
        if (!has_model_predictors(p)) {
            ++excluded;
            out << "EXCLUDED,,,,,\n";
            continue;
        }
        const auto cs = case_scores(model, p);
        out << "SCORED," << int(cs.s) << ',' << csv::format_number(cs.fs) << ','
            << (cs.neg_pd_raw ? csv::format_number(-*cs.neg_pd_raw) : std::string()) << ','
            << csv::format_number(-cs.neg_pd_fuzzy) << ','
            << map_fs_to_grade(cs.fs, model.internal_ratings) << '\n';
    }
    if (excluded) std::cerr << "score: " << excluded << " cases EXCLUDED (missing predictors)\n";
    if (out_path.empty())
        std::cout << out.str();
    else
        write_file(out_path, out.str());
    return 0;
}

// --------------------------------------------------------------- calibrate

// Latest rating per company, reduced to the five-grade scale.
std::map<std::string, Grade> company_grades(const std::vector<RatingRecord>& ratings,
                                            const RatingReducer& reducer) {
    std::map<std::string, const RatingRecord*> latest;
    for (const auto& r : ratings) {
        auto [it, inserted] = latest.emplace(r.company_id, &r);
        if (!inserted && it->second->as_of < r.as_of) it->second = &r;
    }
    std::map<std::string, Grade> out;
    for (const auto& [company, rec] : latest) {
        try {
            out.emplace(company, reducer.reduce(rec->agency, rec->grade));
        } catch (const std::invalid_argument& e) {
            std::cerr << "warning: " << e.what() << " (company '" << company << "' skipped)\n";
        }
    }
    return out;
}

std::map<Grade, std::vector<double>> fs_by_grade(const std::vector<LabeledCase>& cases,
                                                 const std::map<std::string, Grade>& grades,
                                                 const FuzzySpec& fuzzy) {
    std::map<Grade, std::vector<double>> out;
    for (const auto& c : cases) {
        const double fsv = fs_score(c.predictors, fuzzy);
        if (c.label == Label::Bad) {
            out[Grade::Defaulted].push_back(fsv);
            continue;
        }
        auto it = grades.find(c.company_id);
        if (it != grades.end()) out[it->second].push_back(fsv);
    }
    return out;
}

int run_calibrate(const std::string& model_path, const std::string& statements_path,
                  const std::string& ratings_path, const std::string& defaults_path,
                  const std::string& out_dir, const std::string& overrides_path,
                  const std::string& apply_path) {
    auto model = load_model(model_path);
    const auto statements = load_statements(statements_path);
    const auto ratings = load_ratings(ratings_path);
    const auto defaults =
        defaults_path.empty() ? std::vector<DefaultEvent>{} : load_defaults(defaults_path);
    const auto labeled = label_cases(statements, defaults, model.annualize);
    print_warnings(labeled);

    RatingReducer reducer;
    if (!overrides_path.empty()) {
        std::ifstream in(overrides_path);
        if (!in) throw std::runtime_error("cannot open '" + overrides_path + "'");
        csv::Table t(in, {"agency", "raw", "grade"}, "rating overrides");
        for (std::size_t r = 0; r < t.size(); ++r) {
            const auto agency = parse_agency(t.cell(r, "agency"));
            const auto grade = parse_grade(t.cell(r, "grade"));
            if (!agency || !grade)
                throw std::invalid_argument("rating overrides: line " +
                                            std::to_string(t.line_number(r)) +
                                            ": bad agency or grade");
            reducer.add_override(*agency, t.cell(r, "raw"), *grade);
        }
    }

    const auto grades = company_grades(ratings, reducer);
    const auto buckets = fs_by_grade(labeled.cases, grades, model.fuzzy);
    if (buckets.empty()) throw std::runtime_error("calibrate: no rated or defaulted cases");

    const auto stats = grade_statistics(buckets);
    std::cout << "FS-Score by rating grade\n";
    std::cout << "  grade      n      p25     median  p75\n";
    std::ostringstream tsv;
    tsv << "grade\tn\tp25\tmedian\tp75\n";
    for (Grade g : all_grades) {
        auto it = stats.find(g);
        if (it == stats.end()) continue;
        const auto& q = it->second;
        std::printf("  %-9s  %-6zu %-7.3f %-7.3f %-7.3f\n", std::string(to_string(g)).c_str(),
                    buckets.at(g).size(), q.p25, q.median, q.p75);
        tsv << to_string(g) << '\t' << buckets.at(g).size() << '\t' << tsv_num(q.p25) << '\t'
            << tsv_num(q.median) << '\t' << tsv_num(q.p75) << '\n';
    }
    if (!out_dir.empty()) write_file(fs::path(out_dir) / "calibration.tsv", tsv.str());

    // Centers: pooled A+BBB median maps to fsBBB, then one bucket per grade.
    std::vector<std::pair<std::string, double>> centers;
    {
        std::vector<double> top;
        if (buckets.count(Grade::A)) top.insert(top.end(), buckets.at(Grade::A).begin(),
                                                buckets.at(Grade::A).end());
        if (buckets.count(Grade::BBB)) top.insert(top.end(), buckets.at(Grade::BBB).begin(),
                                                  buckets.at(Grade::BBB).end());
        if (!top.empty()) centers.emplace_back("fsBBB", quartiles(top).median);
        if (buckets.count(Grade::BB)) centers.emplace_back("fsBB", stats.at(Grade::BB).median);
        if (buckets.count(Grade::B)) centers.emplace_back("fsB", stats.at(Grade::B).median);
        if (buckets.count(Grade::CCC_C))
            centers.emplace_back("fsCCC/C", stats.at(Grade::CCC_C).median);
        if (buckets.count(Grade::Defaulted))
            centers.emplace_back("fsD", stats.at(Grade::Defaulted).median);
    }

    std::cout << "\nInternal rating scale (left cut-off / center / right cut-off)\n";
    std::cout << "  published:\n";
    for (const auto& b : published_internal_ratings().buckets)
        std::printf("    %-9s %-8.3f %-8.3f %-8.3f\n", b.grade.c_str(), b.left, b.center,
                    b.right);
    try {
        const auto derived = derive_cutoffs(centers);
        std::cout << "  derived from grade medians (midpoint rule):\n";
        for (const auto& b : derived.buckets)
            std::printf("    %-9s %-8.3f %-8.3f %-8.3f\n", b.grade.c_str(), b.left, b.center,
                        b.right);
        if (!apply_path.empty()) {
            model.internal_ratings = derived;
            model.provenance.fit_timestamp = now_iso8601();
            write_file(apply_path, to_json(model));
            std::cerr << "calibrate: model with derived scale written to " << apply_path << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "calibrate: midpoint derivation not possible: " << e.what() << "\n";
        if (!apply_path.empty()) return 1;
    }
    return 0;
}

// ------------------------------------------------------------------ report

int run_report(const std::string& model_path, const std::string& statements_path,
               const std::string& defaults_path, const std::string& ratings_path,
               const std::string& out_dir) {
    const auto model = load_model(model_path);
    const auto statements = load_statements(statements_path);
    const auto defaults = load_defaults(defaults_path);
    const auto labeled = label_cases(statements, defaults, model.annualize);
    print_warnings(labeled);
    const auto& cases = labeled.cases;
    if (cases.empty()) throw std::runtime_error("report: no usable cases");
    fs::create_directories(out_dir);

    std::vector<Label> labels;
    for (const auto& c : cases) labels.push_back(c.label);
    const bool two_classes =
        std::count(labels.begin(), labels.end(), Label::Bad) > 0 &&
        std::count(labels.begin(), labels.end(), Label::Good) > 0;

    // per-predictor ROC curves and distributions
    for (auto field : model_predictor_names) {
        std::vector<double> values, finite, good_finite, bad_finite;
        std::vector<Label> value_labels;
        for (const auto& c : cases) {
            const double v = *predictor_value(c.predictors, field);
            values.push_back(v);
            value_labels.push_back(c.label);
            if (std::isfinite(v)) {
                finite.push_back(v);
                (c.label == Label::Bad ? bad_finite : good_finite).push_back(v);
            }
        }
        const std::string stem = sanitize(field);
        if (two_classes)
            write_roc_tsv(fs::path(out_dir) / ("roc_predictor_" + stem + ".tsv"),
                          roc_curve(values, value_labels));
        if (!finite.empty())
            write_tsv_pairs(fs::path(out_dir) / ("ecdf_" + stem + ".tsv"),
                            empirical_cdf(finite));
        if (!good_finite.empty())
            write_tsv_pairs(fs::path(out_dir) / ("cond_cdf_" + stem + "_good.tsv"),
                            empirical_cdf(good_finite));
        if (!bad_finite.empty())
            write_tsv_pairs(fs::path(out_dir) / ("cond_cdf_" + stem + "_bad.tsv"),
                            empirical_cdf(bad_finite));

        // membership overlay on a grid containing the anchors exactly
        const auto& e = model.fuzzy.entry(field);
        std::vector<std::pair<double, double>> overlay;
        const double step = (e.b - e.a) / 100.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = e.a + (i - 50) * step;
            overlay.emplace_back(x, membership(x, e.a, e.b));
        }
        write_tsv_pairs(fs::path(out_dir) / ("membership_" + stem + ".tsv"), overlay);
    }

    // model scores: distributions and ROC curves on the common subset
    {
        std::vector<double> s_v, fs_v, lr_v, lf_v;
        std::vector<Label> l_v;
        std::vector<double> s_all, fs_all;
        for (const auto& c : cases) {
            const auto cs = case_scores(model, c.predictors);
            s_all.push_back(cs.s);
            fs_all.push_back(cs.fs);
            if (!cs.neg_pd_raw) continue;
            s_v.push_back(cs.s);
            fs_v.push_back(cs.fs);
            lr_v.push_back(*cs.neg_pd_raw);
            lf_v.push_back(cs.neg_pd_fuzzy);
            l_v.push_back(c.label);
        }
        write_tsv_pairs(fs::path(out_dir) / "score_dist_s_score.tsv", empirical_cdf(s_all));
        write_tsv_pairs(fs::path(out_dir) / "score_dist_fs_score.tsv", empirical_cdf(fs_all));
        const bool roc_ok = std::count(l_v.begin(), l_v.end(), Label::Bad) > 0 &&
                            std::count(l_v.begin(), l_v.end(), Label::Good) > 0;
        if (roc_ok) {
            write_roc_tsv(fs::path(out_dir) / "roc_model_s_score.tsv", roc_curve(s_v, l_v));
            write_roc_tsv(fs::path(out_dir) / "roc_model_fs_score.tsv", roc_curve(fs_v, l_v));
            write_roc_tsv(fs::path(out_dir) / "roc_model_logit.tsv", roc_curve(lr_v, l_v));
            write_roc_tsv(fs::path(out_dir) / "roc_model_logit_f.tsv", roc_curve(lf_v, l_v));
        } else {
            std::cerr << "warning: single-class sample, model ROC curves skipped\n";
        }
    }

    // FS distribution per rating grade
    if (ratings_path.empty()) {
        std::cerr << "warning: no ratings file, per-grade FS distributions skipped\n";
    } else {
        const auto ratings = load_ratings(ratings_path);
        const auto grades = company_grades(ratings, RatingReducer{});
        const auto buckets = fs_by_grade(cases, grades, model.fuzzy);
        for (const auto& [grade, values] : buckets)
            write_tsv_pairs(fs::path(out_dir) /
                                ("fs_ecdf_grade_" + sanitize(to_string(grade)) + ".tsv"),
                            empirical_cdf(values));
    }
    std::cerr << "report: data bundle written to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Default-risk scoring toolkit: cut-off, fuzzy and logit models over RAS "
                 "financial statements"};
    app.require_subcommand(1);

    std::string statements_path, defaults_path, ratings_path, model_path, out_path, out_dir;
    std::string overrides_path, apply_path;
    std::string annualize_str = "on";
    std::uint64_t seed = 42;
    int companies = 126;
    bool use_paper_anchors = false, use_paper_coefficients = false;

    auto add_annualize = [&](CLI::App* cmd) {
        cmd->add_option("--annualize", annualize_str,
                        "scale YTD sales by 4/q before LN(Sales) and Sales/Assets (on|off)")
            ->check(CLI::IsMember({"on", "off"}));
    };

    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
    synth->add_option("--seed", seed, "random seed")->capture_default_str();
    synth->add_option("--companies", companies, "number of companies")
        ->required()
        ->check(CLI::Range(2, 10000000));
    synth->add_option("--out", out_dir, "output directory")->required();

    auto* ingest = app.add_subcommand("ingest", "parse and validate input files");
    ingest->add_option("--statements", statements_path, "statements.csv")->required();
    ingest->add_option("--defaults", defaults_path, "defaults.csv");
    ingest->add_option("--ratings", ratings_path, "ratings.csv");

    auto* label = app.add_subcommand("label", "assemble labeled cases");
    label->add_option("--statements", statements_path, "statements.csv")->required();
    label->add_option("--defaults", defaults_path, "defaults.csv")->required();
    label->add_option("--out", out_path, "labeled cases CSV (default stdout)");
    add_annualize(label);

    auto* analyze = app.add_subcommand("analyze", "predictor power report");
    analyze->add_option("--statements", statements_path, "statements.csv")->required();
    analyze->add_option("--defaults", defaults_path, "defaults.csv")->required();
    analyze->add_option("--out", out_dir, "directory for TSV outputs");

    auto* fit = app.add_subcommand("fit", "estimate cut-offs and logit coefficients");
    fit->add_option("--statements", statements_path, "statements.csv")->required();
    fit->add_option("--defaults", defaults_path, "defaults.csv")->required();
    fit->add_option("--out", out_dir, "output directory")->capture_default_str();
    fit->add_option("--model", model_path, "model file path (default <out>/model.json)");
    fit->add_flag("--use-paper-anchors", use_paper_anchors,
                  "use the published cut-offs and membership anchors");
    fit->add_flag("--use-paper-coefficients", use_paper_coefficients,
                  "use the published logit coefficients instead of fitting");
    fit->add_option("--seed", seed, "seed recorded in provenance")->capture_default_str();
    add_annualize(fit);

    auto* score = app.add_subcommand("score", "score statements with a model");
    score->add_option("--model", model_path, "model file (default: built-in published model)");
    score->add_option("--statements", statements_path, "statements.csv")->required();
    score->add_option("--out", out_path, "scores CSV (default stdout)");

    auto* calibrate = app.add_subcommand("calibrate", "per-grade FS statistics and cut-offs");
    calibrate->add_option("--model", model_path, "model file (default: built-in)");
    calibrate->add_option("--statements", statements_path, "statements.csv")->required();
    calibrate->add_option("--ratings", ratings_path, "ratings.csv")->required();
    calibrate->add_option("--defaults", defaults_path, "defaults.csv (for the DEFAULTED bucket)");
    calibrate->add_option("--out", out_dir, "directory for TSV outputs");
    calibrate->add_option("--rating-overrides", overrides_path,
                          "CSV (agency,raw,grade) overriding the built-in reduction");
    calibrate->add_option("--apply", apply_path, "write model with derived scale to this path");

    auto* report = app.add_subcommand("report", "write the figure data bundle");
    report->add_option("--model", model_path, "model file (default: built-in)");
    report->add_option("--statements", statements_path, "statements.csv")->required();
    report->add_option("--defaults", defaults_path, "defaults.csv")->required();
    report->add_option("--ratings", ratings_path, "ratings.csv (for per-grade FS data)");
    report->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);
    const bool annualize = annualize_str == "on";

    try {
        if (synth->parsed()) return run_synth(seed, companies, out_dir);
        if (ingest->parsed()) return run_ingest(statements_path, defaults_path, ratings_path);
        if (label->parsed())
            return run_label(statements_path, defaults_path, annualize, out_path);
        if (analyze->parsed()) return run_analyze(statements_path, defaults_path, out_dir);
        if (fit->parsed())
            return run_fit(statements_path, defaults_path, out_dir.empty() ? "." : out_dir,
                           model_path, annualize, use_paper_anchors, use_paper_coefficients,
                           seed);
        if (score->parsed()) return run_score(model_path, statements_path, out_path);
        if (calibrate->parsed())
            return run_calibrate(model_path, statements_path, ratings_path, defaults_path,
                                 out_dir, overrides_path, apply_path);
        if (report->parsed())
            return run_report(model_path, statements_path, defaults_path, ratings_path, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
