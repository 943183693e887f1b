// Model persistence: one versioned JSON document bundling the cut-off spec,
// fuzzy anchors, both logit models, the internal rating scale, and a
// provenance block. Numbers are serialized as decimal strings with 17
// significant digits so parse(serialize(m)) is value-exact.

#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fscore/calibration.hpp"
#include "fscore/logit.hpp"
#include "fscore/scoring.hpp"

namespace fscore {

inline constexpr std::string_view model_file_version = "fscore-model/1";

struct Provenance {
    std::string input_digest;   // FNV-1a over the input files, hex
    std::string fit_timestamp;  // ISO-8601 UTC; empty for built-ins
    std::uint64_t seed = 0;
};

struct ModelFile {
    std::string version{model_file_version};
    bool annualize = true;  // sales scaling used when the model was fit
    CutoffSpec cutoffs;
    FuzzySpec fuzzy;
    LogitModel logit_raw;
    LogitModel logit_fuzzy;
    InternalRatingSpec internal_ratings;
    Provenance provenance;

    void validate() const {
        if (version != model_file_version)
            throw std::invalid_argument("ModelFile: unsupported version '" + version + "'");
        cutoffs.validate();
        fuzzy.validate();
        logit_raw.validate();
        logit_fuzzy.validate();
        if (logit_raw.space != PredictorSpace::Raw ||
            logit_fuzzy.space != PredictorSpace::Fuzzy)
            throw std::invalid_argument("ModelFile: logit spaces are swapped");
        internal_ratings.validate();
    }
};

// Published-everything model, usable with no fitting step.
inline ModelFile paper_model() {
    ModelFile m;
    m.cutoffs = paper_cutoff_spec();
    m.fuzzy = paper_fuzzy_spec();
    m.logit_raw = paper_raw_logit();
    m.logit_fuzzy = paper_fuzzy_logit();
    m.internal_ratings = published_internal_ratings();
    m.provenance.input_digest = "builtin:published-tables";
    return m;
}

namespace detail {

inline std::string num_to_string(double v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

inline double num_from_string(const std::string& s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw std::invalid_argument("ModelFile: bad number '" + s + "'");
    return v;
}

inline nlohmann::ordered_json logit_to_json(const LogitModel& m) {
    nlohmann::ordered_json j;
    j["space"] = std::string(to_string(m.space));
    j["intercept"] = num_to_string(m.intercept);
    nlohmann::ordered_json coefs;
    for (const auto& [field, b] : m.coefficients) coefs[field] = num_to_string(b);
    j["coefficients"] = coefs;
    return j;
}

inline LogitModel logit_from_json(const nlohmann::ordered_json& j, const FuzzySpec& fuzzy) {
    LogitModel m;
    const std::string space = j.at("space").get<std::string>();
    if (space == "RAW")
        m.space = PredictorSpace::Raw;
    else if (space == "FUZZY")
        m.space = PredictorSpace::Fuzzy;
    else
        throw std::invalid_argument("ModelFile: bad logit space '" + space + "'");
    m.intercept = num_from_string(j.at("intercept").get<std::string>());
    const auto& coefs = j.at("coefficients");
    for (auto name : model_predictor_names)
        m.coefficients.emplace_back(std::string(name),
                                    num_from_string(coefs.at(std::string(name)).get<std::string>()));
    if (m.space == PredictorSpace::Fuzzy) m.fuzzy = fuzzy;
    return m;
}

}  // namespace detail

inline std::string to_json(const ModelFile& m) {
    m.validate();
    nlohmann::ordered_json j;
    j["version"] = m.version;
    j["annualize"] = m.annualize;

    nlohmann::ordered_json cutoffs;
    for (const auto& [field, c] : m.cutoffs.entries) cutoffs[field] = detail::num_to_string(c);
    j["cutoffs"] = cutoffs;

    nlohmann::ordered_json fuzzy;
    for (const auto& e : m.fuzzy.entries) {
        fuzzy[e.field] = {{"a", detail::num_to_string(e.a)}, {"b", detail::num_to_string(e.b)}};
    }
    j["fuzzy"] = fuzzy;

    j["logit_raw"] = detail::logit_to_json(m.logit_raw);
    j["logit_fuzzy"] = detail::logit_to_json(m.logit_fuzzy);

    nlohmann::ordered_json ratings = nlohmann::ordered_json::array();
    for (const auto& b : m.internal_ratings.buckets) {
        ratings.push_back({{"grade", b.grade},
                           {"left", detail::num_to_string(b.left)},
                           {"center", detail::num_to_string(b.center)},
                           {"right", detail::num_to_string(b.right)}});
    }
    j["internal_ratings"] = ratings;

    j["provenance"] = {{"input_digest", m.provenance.input_digest},
                       {"fit_timestamp", m.provenance.fit_timestamp},
                       {"seed", m.provenance.seed}};
    return j.dump(2) + "\n";
}

inline ModelFile model_from_json(std::string_view text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("ModelFile: JSON parse error: ") + e.what());
    }
    ModelFile m;
    m.version = j.at("version").get<std::string>();
    if (m.version != model_file_version)
        throw std::invalid_argument("ModelFile: unsupported version '" + m.version + "'");
    m.annualize = j.at("annualize").get<bool>();

    for (auto name : model_predictor_names)
        m.cutoffs.entries.emplace_back(
            std::string(name),
            detail::num_from_string(j.at("cutoffs").at(std::string(name)).get<std::string>()));

    for (auto name : model_predictor_names) {
        const auto& e = j.at("fuzzy").at(std::string(name));
        m.fuzzy.entries.push_back({std::string(name),
                                   detail::num_from_string(e.at("a").get<std::string>()),
                                   detail::num_from_string(e.at("b").get<std::string>())});
    }

    m.logit_raw = detail::logit_from_json(j.at("logit_raw"), m.fuzzy);
    m.logit_fuzzy = detail::logit_from_json(j.at("logit_fuzzy"), m.fuzzy);

    for (const auto& b : j.at("internal_ratings")) {
        m.internal_ratings.buckets.push_back(
            {b.at("grade").get<std::string>(),
             detail::num_from_string(b.at("left").get<std::string>()),
             detail::num_from_string(b.at("center").get<std::string>()),
             detail::num_from_string(b.at("right").get<std::string>())});
    }

    const auto& prov = j.at("provenance");
    m.provenance.input_digest = prov.at("input_digest").get<std::string>();
    m.provenance.fit_timestamp = prov.at("fit_timestamp").get<std::string>();
    m.provenance.seed = prov.at("seed").get<std::uint64_t>();

    m.validate();
    return m;
}

// FNV-1a 64-bit, for input provenance digests.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fscore
