#pragma once

// Seeded generator for the boilerplate benchmark corpus: every page is a
// navigation block (topic terms inside anchors), an article block (topic
// terms in clean prose) and a footer. The first query-term occurrence is
// always inside the nav, so the baseline snippet sources boilerplate
// while the semantic snippet sources the article.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "snipforge/eval.hpp"
#include "snipforge/segment.hpp"

namespace snipforge {

struct SyntheticCorpus {
    std::vector<Document> documents;
    std::vector<SessionSpec> sessions;  // one per topic, query = topic terms
};

namespace detail {

inline const std::vector<std::pair<std::string, std::string>>& topic_pairs() {
    static const std::vector<std::pair<std::string, std::string>> k = {
        {"glacier", "moraine"},   {"quantum", "lattice"},
        {"orchid", "pollinator"}, {"basalt", "volcanism"},
        {"sonnet", "meter"},      {"ferment", "brine"},
        {"compiler", "lexer"},    {"nebula", "parallax"},
        {"mycelium", "spore"},    {"aqueduct", "masonry"},
        {"falconry", "raptor"},   {"tapestry", "loom"},
        {"estuary", "salinity"},  {"gearbox", "torque"},
        {"saffron", "crocus"}};
    return k;
}

inline const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> k = {
        "river",   "stone",  "window",  "garden", "winter",  "summer",
        "village", "market", "evening", "candle", "journey", "harbor",
        "meadow",  "bridge", "lantern", "forest", "valley",  "shadow",
        "morning", "copper", "timber",  "harvest"};
    return k;
}

inline std::string filler_sentence(std::mt19937& rng, std::size_t words) {
    std::uniform_int_distribution<std::size_t> pick(0, filler_words().size() - 1);
    std::string s;
    for (std::size_t i = 0; i < words; ++i) {
        if (!s.empty()) s += ' ';
        s += filler_words()[pick(rng)];
    }
    s += '.';
    return s;
}

}  // namespace detail

inline SyntheticCorpus make_boilerplate_corpus(std::uint32_t seed,
                                               std::size_t pages = 105) {
    std::mt19937 rng(seed);
    SyntheticCorpus corpus;
    const auto& topics = detail::topic_pairs();

    for (std::size_t i = 0; i < pages; ++i) {
        const auto& [t1, t2] = topics[i % topics.size()];
        std::string id = "page" + std::to_string(i);

        std::string nav = "<nav><a href=\"/a\">" + t1 + " archive</a> "
            "<a href=\"/b\">" + t2 + " catalog</a> "
            "<a href=\"/c\">browse " + t1 + " topics</a> "
            "<a href=\"/d\">about</a> <a href=\"/e\">contact</a></nav>";

        std::string article = "<article><h2>" + t1 + " and " + t2 + " notes</h2>";
        for (int p = 0; p < 3; ++p) {
            article += "<p>The " + t1 + " " + t2 + " story continues here. " +
                       detail::filler_sentence(rng, 14) + " " +
                       detail::filler_sentence(rng, 12) + "</p>";
        }
        article += "</article>";

        std::string footer = "<footer>Site credits and legal information. " +
                             detail::filler_sentence(rng, 8) + "</footer>";

        Document doc;
        doc.id = id;
        doc.rawHtml = "<html><head><title>" + t1 + " " + t2 +
                      "</title></head><body>" + nav + article + footer +
                      "</body></html>";
        corpus.documents.push_back(std::move(doc));
    }

    for (std::size_t t = 0; t < topics.size(); ++t) {
        corpus.sessions.push_back({"s" + std::to_string(t + 1),
                                   topics[t].first + " " + topics[t].second});
    }
    return corpus;
}

}  // namespace snipforge
