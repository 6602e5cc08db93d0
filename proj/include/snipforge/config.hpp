#pragma once

// Application configuration: a flat JSON document with dotted keys.
// Precedence is flags > config file > defaults; unknown keys are
// rejected by name so typos cannot silently fall back to defaults.

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snipforge/dates.hpp"
#include "snipforge/errors.hpp"
#include "snipforge/eval.hpp"
#include "snipforge/scorer.hpp"
#include "snipforge/segment.hpp"
#include "snipforge/snippet.hpp"

namespace snipforge {

struct AppConfig {
    std::size_t mu = 10;
    std::size_t budgetChars = 100;
    std::size_t topSegments = 3;
    std::size_t matchWindowChars = 40;
    std::size_t minSplitChars = 200;
    std::size_t mergeBelowChars = 40;
    double wF = 1, wE = 1, wL = 1, wV = 1, wR = 1, wM = 1;
    std::string referenceDate;  // ISO string, empty = none configured
    std::vector<std::string> profileTerms;
    std::string stopwordsPath;  // empty = built-in English list
    bool stemming = false;
    double judgeMinProvenanceShare = 0.6;
    double judgeLinkThreshold = 0.5;

    void validate() const {
        auto at_least = [](std::size_t v, std::size_t bound, const char* name) {
            if (v < bound)
                throw ConfigError(std::string(name) + " must be >= " +
                                  std::to_string(bound) + ", got " +
                                  std::to_string(v));
        };
        at_least(mu, 1, "mu");
        at_least(budgetChars, 20, "budget_chars");
        at_least(topSegments, 1, "top_segments");
        at_least(matchWindowChars, 1, "match_window_chars");
        at_least(minSplitChars, 1, "segmenter.min_split_chars");
        for (double w : {wF, wE, wL, wV, wR, wM})
            if (w < 0) throw ConfigError("scorer multipliers must be >= 0");
        if (wF + wE + wL + wV + wR + wM <= 0)
            throw ConfigError("at least one scorer multiplier must be > 0");
        if (!referenceDate.empty() && !parse_iso_date(referenceDate))
            throw ConfigError("scorer.reference_date must be YYYY-MM-DD, got " +
                              referenceDate);
        if (judgeMinProvenanceShare < 0 || judgeMinProvenanceShare > 1)
            throw ConfigError("judge.min_provenance_share must be in [0,1]");
        if (judgeLinkThreshold < 0 || judgeLinkThreshold > 1)
            throw ConfigError("judge.link_threshold must be in [0,1]");
    }

    SegmenterConfig segmenter_config() const {
        return {minSplitChars, mergeBelowChars};
    }
    ScorerConfig scorer_config() const {
        ScorerConfig s;
        s.wF = wF; s.wE = wE; s.wL = wL; s.wV = wV; s.wR = wR; s.wM = wM;
        if (!referenceDate.empty())
            s.freshnessReferenceDate = parse_iso_date(referenceDate);
        s.profileTerms.insert(profileTerms.begin(), profileTerms.end());
        return s;
    }
    SnippetConfig snippet_config() const {
        return {budgetChars, topSegments, matchWindowChars};
    }
    JudgeConfig judge_config() const {
        return {judgeMinProvenanceShare, judgeLinkThreshold};
    }
    EvalConfig eval_config() const {
        return {mu, segmenter_config(), scorer_config(), snippet_config(),
                judge_config()};
    }

    nlohmann::json to_json() const {
        return {{"mu", mu},
                {"budget_chars", budgetChars},
                {"top_segments", topSegments},
                {"match_window_chars", matchWindowChars},
                {"segmenter.min_split_chars", minSplitChars},
                {"segmenter.merge_below_chars", mergeBelowChars},
                {"scorer.wF", wF},
                {"scorer.wE", wE},
                {"scorer.wL", wL},
                {"scorer.wV", wV},
                {"scorer.wR", wR},
                {"scorer.wM", wM},
                {"scorer.reference_date", referenceDate},
                {"scorer.profile_terms", profileTerms},
                {"stopwords_path", stopwordsPath},
                {"stemming", stemming},
                {"judge.min_provenance_share", judgeMinProvenanceShare},
                {"judge.link_threshold", judgeLinkThreshold}};
    }

    static AppConfig from_json(const nlohmann::json& j) {
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        AppConfig cfg;
        for (const auto& [key, value] : j.items()) {
            try {
                if (key == "mu") cfg.mu = value.get<std::size_t>();
                else if (key == "budget_chars") cfg.budgetChars = value.get<std::size_t>();
                else if (key == "top_segments") cfg.topSegments = value.get<std::size_t>();
                else if (key == "match_window_chars") cfg.matchWindowChars = value.get<std::size_t>();
                else if (key == "segmenter.min_split_chars") cfg.minSplitChars = value.get<std::size_t>();
                else if (key == "segmenter.merge_below_chars") cfg.mergeBelowChars = value.get<std::size_t>();
                else if (key == "scorer.wF") cfg.wF = value.get<double>();
                else if (key == "scorer.wE") cfg.wE = value.get<double>();
                else if (key == "scorer.wL") cfg.wL = value.get<double>();
                else if (key == "scorer.wV") cfg.wV = value.get<double>();
                else if (key == "scorer.wR") cfg.wR = value.get<double>();
                else if (key == "scorer.wM") cfg.wM = value.get<double>();
                else if (key == "scorer.reference_date") cfg.referenceDate = value.get<std::string>();
                else if (key == "scorer.profile_terms") cfg.profileTerms = value.get<std::vector<std::string>>();
                else if (key == "stopwords_path") cfg.stopwordsPath = value.get<std::string>();
                else if (key == "stemming") cfg.stemming = value.get<bool>();
                else if (key == "judge.min_provenance_share") cfg.judgeMinProvenanceShare = value.get<double>();
                else if (key == "judge.link_threshold") cfg.judgeLinkThreshold = value.get<double>();
                else throw ConfigError("unknown config key: " + key);
            } catch (const nlohmann::json::exception&) {
                throw ConfigError("config key '" + key + "' has the wrong type");
            }
        }
        cfg.validate();
        return cfg;
    }
};

// Absent path yields pure defaults; a present file must parse and pass
// validation.
inline AppConfig load_config(const std::string& path) {
    if (path.empty() || !std::filesystem::exists(path)) {
        AppConfig cfg;
        cfg.validate();
        return cfg;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") +
                          e.what());
    }
    return AppConfig::from_json(j);
}

inline const StopwordSet& builtin_stopwords() {
    static const StopwordSet k = {
        "a",    "an",   "and",  "are",  "as",   "at",   "be",   "but",
        "by",   "for",  "from", "has",  "have", "he",   "her",  "his",
        "if",   "in",   "is",   "it",   "its",  "no",   "not",  "of",
        "on",   "or",   "she",  "that", "the",  "their", "then", "there",
        "these", "they", "this", "to",   "was",  "were", "will", "with"};
    return k;
}

inline StopwordSet load_stopwords(const std::string& path) {
    if (path.empty()) return builtin_stopwords();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open stopword file: " + path);
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        std::string word = normalize_whitespace(line);
        if (!word.empty() && word[0] != '#') set.insert(word);
    }
    return set;
}

}  // namespace snipforge
