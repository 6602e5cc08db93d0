#pragma once

// Shared test utilities: independent oracles (brute-force tf-idf scorer,
// reference sort, occurrence grouping), random corpus and HTML fuzz
// generators, and fixture helpers. Oracles here deliberately avoid the
// implementation paths they check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "snipforge/config.hpp"
#include "snipforge/index.hpp"
#include "snipforge/segment.hpp"
#include "snipforge/text.hpp"

namespace support {

inline std::string fixture_path(const std::string& name) {
    return std::string(SNIPFORGE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------
// Brute-force tf-idf cosine retrieval over raw token lists. No inverted
// index: every document is scored directly.
struct RawDoc {
    std::string id;
    std::string text;
};

inline std::vector<std::pair<std::string, double>> brute_force_retrieve(
    const std::vector<RawDoc>& docs, const std::vector<std::string>& query_terms,
    std::size_t mu, const snipforge::StopwordSet& stopwords) {
    const double n_docs = static_cast<double>(docs.size());
    std::vector<std::map<std::string, double>> tfs;
    for (const auto& d : docs) {
        std::map<std::string, double> tf;
        for (const auto& t : snipforge::tokenize(d.text, stopwords)) tf[t] += 1;
        tfs.push_back(std::move(tf));
    }
    std::map<std::string, double> df;
    for (const auto& tf : tfs)
        for (const auto& [term, _] : tf) df[term] += 1;
    auto idf = [&](const std::string& t) {
        auto it = df.find(t);
        if (it == df.end()) return 0.0;
        return std::log(1.0 + n_docs / it->second);
    };

    double qnorm2 = 0;
    for (const auto& t : query_terms) qnorm2 += idf(t) * idf(t);
    std::vector<std::pair<std::string, double>> scored;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        double dnorm2 = 0, dot = 0;
        for (const auto& [term, tf] : tfs[i]) {
            double w = tf * idf(term);
            dnorm2 += w * w;
        }
        for (const auto& t : query_terms) {
            auto it = tfs[i].find(t);
            if (it != tfs[i].end()) dot += idf(t) * (it->second * idf(t));
        }
        if (dot > 0 && qnorm2 > 0)
            scored.emplace_back(docs[i].id,
                                dot / (std::sqrt(qnorm2) * std::sqrt(dnorm2)));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > mu) scored.resize(mu);
    return scored;
}

// ---------------------------------------------------------------------
// Random word corpora for retrieval-oracle checks.
inline const std::vector<std::string>& vocab() {
    static const std::vector<std::string> k = {
        "amber",  "basin", "cedar", "delta", "ember", "fjord", "grove",
        "heron",  "inlet", "jetty", "knoll", "larch", "mesa",  "notch",
        "osier",  "pine",  "quay",  "ridge", "slate", "tarn"};
    return k;
}

inline std::vector<RawDoc> random_corpus(std::mt19937& rng,
                                         std::size_t max_docs = 50) {
    std::uniform_int_distribution<std::size_t> ndocs(1, max_docs);
    std::uniform_int_distribution<std::size_t> ntoks(3, 40);
    std::uniform_int_distribution<std::size_t> word(0, vocab().size() - 1);
    std::vector<RawDoc> docs;
    std::size_t n = ndocs(rng);
    for (std::size_t i = 0; i < n; ++i) {
        std::string text;
        std::size_t len = ntoks(rng);
        for (std::size_t j = 0; j < len; ++j) {
            if (!text.empty()) text += ' ';
            text += vocab()[word(rng)];
        }
        std::string id = "d" + std::string(i < 10 ? "0" : "") + std::to_string(i);
        docs.push_back({std::move(id), text});
    }
    return docs;
}

inline std::vector<std::string> random_query(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> nterms(1, 3);
    std::uniform_int_distribution<std::size_t> word(0, vocab().size() - 1);
    std::set<std::string> terms;
    std::size_t n = nterms(rng);
    while (terms.size() < n) terms.insert(vocab()[word(rng)]);
    return {terms.begin(), terms.end()};
}

// ---------------------------------------------------------------------
// HTML fuzzer: random tag soup with nesting errors, entities, comments,
// scripts and images. Deterministic per seed.
inline std::string fuzz_html(std::mt19937& rng) {
    static const std::vector<std::string> tags = {
        "div", "p",  "span", "section", "article", "ul", "li", "nav",
        "h1",  "h2", "h3",   "footer",  "table",   "b",  "a",  "figure"};
    std::uniform_int_distribution<int> action(0, 9);
    std::uniform_int_distribution<std::size_t> tag_pick(0, tags.size() - 1);
    std::uniform_int_distribution<std::size_t> word(0, vocab().size() - 1);
    std::uniform_int_distribution<int> words(1, 8);

    std::string html = "<html><body>";
    std::vector<std::string> open;
    int steps = std::uniform_int_distribution<int>(10, 60)(rng);
    for (int i = 0; i < steps; ++i) {
        switch (action(rng)) {
            case 0:
            case 1:
            case 2: {  // text
                int n = words(rng);
                for (int w = 0; w < n; ++w) html += vocab()[word(rng)] + " ";
                break;
            }
            case 3: {  // open tag (sometimes never closed)
                const auto& t = tags[tag_pick(rng)];
                html += "<" + t + ">";
                open.push_back(t);
                break;
            }
            case 4: {  // close most recent tag
                if (!open.empty()) {
                    html += "</" + open.back() + ">";
                    open.pop_back();
                }
                break;
            }
            case 5:  // stray close tag
                html += "</" + tags[tag_pick(rng)] + ">";
                break;
            case 6:
                html += "<img alt=\"" + vocab()[word(rng)] + "\">";
                break;
            case 7:
                html += "<!-- hidden " + vocab()[word(rng)] + " -->";
                break;
            case 8:
                html += "<script>var x = 1;</script>";
                break;
            case 9:
                html += "&amp; &lt;" + vocab()[word(rng)] + "&gt; &#65; ";
                break;
        }
    }
    html += "</body></html>";
    return html;
}

// ---------------------------------------------------------------------
// Segmentation coverage invariant: trimmed spans tile the visible text
// up to whitespace, ordinals increase with span start, and each text
// equals the normalized substring at its span.
inline bool check_coverage(const snipforge::SegmentedPage& page,
                           std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::size_t cursor = 0;
    std::size_t prev_start = 0;
    for (std::size_t i = 0; i < page.segments.size(); ++i) {
        const auto& seg = page.segments[i];
        if (seg.ordinal != i) return fail("ordinal mismatch");
        if (seg.span.start >= seg.span.end) return fail("empty span");
        if (i > 0 && seg.span.start <= prev_start)
            return fail("span starts not increasing");
        if (seg.span.start < cursor) return fail("overlapping spans");
        for (std::size_t p = cursor; p < seg.span.start; ++p)
            if (!snipforge::is_space_byte(
                    (unsigned char)page.visibleText[p]))
                return fail("non-whitespace gap before segment " +
                            std::to_string(i));
        std::string expected = snipforge::normalize_whitespace(
            std::string_view(page.visibleText)
                .substr(seg.span.start, seg.span.end - seg.span.start));
        if (expected != seg.text) return fail("text != normalized span");
        if (seg.text.empty() && seg.images.empty())
            return fail("empty segment without images");
        if (seg.anchorChars > seg.text.size() && !seg.text.empty())
            return fail("anchorChars exceeds text length");
        cursor = seg.span.end;
        prev_start = seg.span.start;
    }
    for (std::size_t p = cursor; p < page.visibleText.size(); ++p)
        if (!snipforge::is_space_byte((unsigned char)page.visibleText[p]))
            return fail("trailing non-whitespace not covered");
    return true;
}

// Random Segment structs for scorer property checks.
inline snipforge::Segment random_segment(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> len(0, 120);
    std::uniform_int_distribution<std::size_t> word(0, vocab().size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> imgs(0, 5);
    snipforge::Segment seg;
    std::size_t chars = len(rng);
    while (seg.text.size() < chars) {
        if (!seg.text.empty()) seg.text += ' ';
        seg.text += vocab()[word(rng)];
    }
    seg.span = {0, seg.text.size()};
    if (!seg.text.empty())
        seg.anchorChars = std::uniform_int_distribution<std::size_t>(
            0, seg.text.size())(rng);
    seg.hasHeading = coin(rng) == 1;
    seg.headingDepth = seg.hasHeading ? 2 : 0;
    int n_imgs = imgs(rng);
    for (int i = 0; i < n_imgs; ++i) seg.images.push_back(vocab()[word(rng)]);
    if (seg.text.empty() && seg.images.empty()) seg.images.push_back("pic");
    if (coin(rng)) seg.dates.push_back({2010 + coin(rng), 3, 15});
    return seg;
}

}  // namespace support
