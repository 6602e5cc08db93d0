#pragma once

// Tokenization and whitespace utilities shared by the indexer, the
// scorer and the snippet matcher. All three must tokenize identically,
// so this is the only place that defines what a token is.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace snipforge {

using StopwordSet = std::set<std::string>;

inline bool is_token_byte(unsigned char c) {
    // ASCII letters/digits plus any non-ASCII byte (UTF-8 continuation or
    // lead bytes of non-Latin letters). Everything else separates tokens.
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
           (c >= 'A' && c <= 'Z') || c >= 0x80;
}

inline bool is_space_byte(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
}

// Minimal English suffix stripper, off by default. Applied uniformly to
// index, query and snippet matching when enabled.
inline std::string stem_token(std::string t) {
    auto ends_with = [&](std::string_view suf) {
        return t.size() > suf.size() + 2 &&
               t.compare(t.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends_with("ing"))
        t.erase(t.size() - 3);
    else if (ends_with("ed"))
        t.erase(t.size() - 2);
    else if (ends_with("es"))
        t.erase(t.size() - 2);
    else if (t.size() > 3 && t.back() == 's' && t[t.size() - 2] != 's')
        t.pop_back();
    return t;
}

struct TokenSpan {
    std::string text;       // lowercased, stopword-filtered, optionally stemmed
    std::size_t start = 0;  // byte offsets of the raw token in the input
    std::size_t end = 0;
};

inline std::vector<TokenSpan> tokenize_spans(std::string_view text,
                                             const StopwordSet& stopwords,
                                             bool stemming = false) {
    std::vector<TokenSpan> out;
    std::size_t i = 0, n = text.size();
    while (i < n) {
        if (!is_token_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        std::string tok;
        while (i < n && is_token_byte(static_cast<unsigned char>(text[i]))) {
            char c = text[i];
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            tok.push_back(c);
            ++i;
        }
        if (stopwords.count(tok)) continue;
        if (stemming) tok = stem_token(std::move(tok));
        out.push_back({std::move(tok), start, i});
    }
    return out;
}

inline std::vector<std::string> tokenize(std::string_view text,
                                         const StopwordSet& stopwords,
                                         bool stemming = false) {
    std::vector<std::string> out;
    for (auto& ts : tokenize_spans(text, stopwords, stemming))
        out.push_back(std::move(ts.text));
    return out;
}

// Collapse whitespace runs to single spaces and trim both ends.
inline std::string normalize_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (unsigned char c : s) {
        if (is_space_byte(c)) {
            if (!out.empty()) pending = true;
        } else {
            if (pending) out.push_back(' ');
            pending = false;
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

inline std::unordered_map<std::string, double> term_frequencies(
    const std::vector<std::string>& tokens) {
    std::unordered_map<std::string, double> tf;
    for (const auto& t : tokens) tf[t] += 1.0;
    return tf;
}

inline double cosine_similarity(
    const std::unordered_map<std::string, double>& a,
    const std::unordered_map<std::string, double>& b) {
    if (a.empty() || b.empty()) return 0.0;
    double dot = 0, na = 0, nb = 0;
    for (const auto& [t, w] : a) {
        na += w * w;
        auto it = b.find(t);
        if (it != b.end()) dot += w * it->second;
    }
    for (const auto& [t, w] : b) nb += w * w;
    if (dot == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace snipforge
