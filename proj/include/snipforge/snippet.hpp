#pragma once

// Snippet construction. Semantic snippets take query-term match windows
// from the highest-scored segments in rank order; simple snippets (the
// baseline) take the first match window in document reading order. Both
// respect a hard character budget and never cut words.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "snipforge/index.hpp"
#include "snipforge/scorer.hpp"
#include "snipforge/segment.hpp"
#include "snipforge/text.hpp"

namespace snipforge {

inline constexpr std::string_view kFragmentJoiner = " \xE2\x80\xA6 ";  // " … "

struct RankedSegments {
    std::vector<std::pair<std::size_t, double>> order;  // (ordinal, total)
};

struct MatchWindow {
    std::size_t segmentOrdinal = 0;
    CharSpan span;  // within the segment's text
    std::set<std::string> matchedTerms;
};

struct SnippetFragment {
    std::string text;
    std::size_t segmentOrdinal = 0;
    CharSpan span;  // within the segment's text
};

enum class SnippetMode { Semantic, Simple };

struct Snippet {
    std::vector<SnippetFragment> fragments;
    std::string rendered;
    SnippetMode mode = SnippetMode::Semantic;
};

struct SnippetConfig {
    std::size_t budgetChars = 100;
    std::size_t topSegments = 3;
    std::size_t matchWindowChars = 40;
};

// Descending by total score, ties by segment ordinal ascending.
inline RankedSegments rank_segments(const std::vector<SegmentScore>& scores) {
    RankedSegments ranked;
    ranked.order.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        ranked.order.emplace_back(i, scores[i].total);
    std::stable_sort(ranked.order.begin(), ranked.order.end(),
                     [](const auto& a, const auto& b) {
                         return a.second > b.second;
                     });
    return ranked;
}

namespace detail {

// Expand a span outward to whitespace so no word is cut.
inline CharSpan expand_to_words(std::string_view text, CharSpan span) {
    while (span.start > 0 &&
           !is_space_byte((unsigned char)text[span.start - 1]))
        --span.start;
    while (span.end < text.size() &&
           !is_space_byte((unsigned char)text[span.end]))
        ++span.end;
    return span;
}

// Head of `text`, at most `budget` bytes, cut at a word boundary when
// possible.
inline CharSpan head_span(std::string_view text, std::size_t budget) {
    if (text.size() <= budget) return {0, text.size()};
    std::size_t end = budget;
    while (end > 0 && !is_space_byte((unsigned char)text[end])) --end;
    while (end > 0 && is_space_byte((unsigned char)text[end - 1])) --end;
    if (end == 0) end = budget;  // single long word: hard cut
    return {0, end};
}

}  // namespace detail

// All query-term occurrences in the segment text, greedily grouped: an
// occurrence joins the current group when it starts within `window`
// characters of the group's end. Each group becomes one window of at
// least `window` characters (clamped to the text), expanded outward to
// whitespace. Overlapping windows are coalesced.
inline std::vector<MatchWindow> match_segment(const Segment& seg,
                                              const Query& query,
                                              std::size_t window,
                                              const StopwordSet& stopwords,
                                              bool stemming = false) {
    std::vector<MatchWindow> out;
    if (seg.text.empty() || query.terms.empty()) return out;
    std::set<std::string> wanted(query.terms.begin(), query.terms.end());

    struct Occ {
        std::size_t start, end;
        std::string term;
    };
    std::vector<Occ> occs;
    for (const auto& ts : tokenize_spans(seg.text, stopwords, stemming))
        if (wanted.count(ts.text)) occs.push_back({ts.start, ts.end, ts.text});
    if (occs.empty()) return out;

    std::size_t i = 0;
    while (i < occs.size()) {
        std::size_t core_start = occs[i].start;
        std::size_t core_end = occs[i].end;
        MatchWindow w;
        w.segmentOrdinal = seg.ordinal;
        w.matchedTerms.insert(occs[i].term);
        std::size_t j = i + 1;
        while (j < occs.size() && occs[j].start <= core_end + window) {
            core_end = std::max(core_end, occs[j].end);
            w.matchedTerms.insert(occs[j].term);
            ++j;
        }
        // Pad the core to the window size, centered.
        std::size_t core_len = core_end - core_start;
        std::size_t pad = core_len < window ? window - core_len : 0;
        std::size_t left = pad / 2;
        std::size_t start = core_start > left ? core_start - left : 0;
        std::size_t end = std::min(seg.text.size(), core_end + (pad - pad / 2));
        w.span = detail::expand_to_words(seg.text, {start, end});
        out.push_back(std::move(w));
        i = j;
    }

    // Coalesce windows whose expanded spans touch or overlap.
    std::vector<MatchWindow> merged;
    for (auto& w : out) {
        if (!merged.empty() && w.span.start <= merged.back().span.end) {
            merged.back().span.end = std::max(merged.back().span.end, w.span.end);
            merged.back().matchedTerms.insert(w.matchedTerms.begin(),
                                              w.matchedTerms.end());
        } else {
            merged.push_back(std::move(w));
        }
    }
    return merged;
}

namespace detail {

inline std::size_t rendered_size_with(const Snippet& snip, std::size_t frag_len) {
    if (snip.fragments.empty()) return frag_len;
    return snip.rendered.size() + kFragmentJoiner.size() + frag_len;
}

inline void append_fragment(Snippet& snip, const Segment& seg, CharSpan span) {
    SnippetFragment frag;
    frag.text = seg.text.substr(span.start, span.end - span.start);
    frag.segmentOrdinal = seg.ordinal;
    frag.span = span;
    if (!snip.fragments.empty()) snip.rendered += std::string(kFragmentJoiner);
    snip.rendered += frag.text;
    snip.fragments.push_back(std::move(frag));
}

inline const Segment* top_text_segment(const std::vector<Segment>& segments,
                                       const RankedSegments& ranked) {
    for (const auto& [ordinal, total] : ranked.order)
        if (!segments[ordinal].text.empty()) return &segments[ordinal];
    return nullptr;
}

inline void fallback_head(Snippet& snip, const Segment* seg,
                          std::size_t budget) {
    if (!seg || seg->text.empty()) return;
    CharSpan span = head_span(seg->text, budget);
    if (span.end > span.start) append_fragment(snip, *seg, span);
}

}  // namespace detail

// Walks segments in descending score order, restricted to the top
// `topSegments`, collecting match windows until the budget would be
// exceeded. Pages without any query-term match in those segments fall
// back to the head of the highest-scored text segment.
inline Snippet build_semantic_snippet(const std::vector<Segment>& segments,
                                      const std::vector<SegmentScore>& scores,
                                      const Query& query,
                                      const SnippetConfig& cfg,
                                      const StopwordSet& stopwords,
                                      bool stemming = false) {
    Snippet snip;
    snip.mode = SnippetMode::Semantic;
    RankedSegments ranked = rank_segments(scores);

    bool over_budget = false;
    std::size_t considered = 0;
    for (const auto& [ordinal, total] : ranked.order) {
        if (considered >= cfg.topSegments || over_budget) break;
        ++considered;
        const Segment& seg = segments[ordinal];
        if (seg.text.empty()) continue;
        for (const auto& w : match_segment(seg, query, cfg.matchWindowChars,
                                           stopwords, stemming)) {
            std::size_t frag_len = w.span.end - w.span.start;
            if (detail::rendered_size_with(snip, frag_len) > cfg.budgetChars) {
                over_budget = true;
                break;
            }
            detail::append_fragment(snip, seg, w.span);
        }
    }

    if (snip.fragments.empty())
        detail::fallback_head(snip, detail::top_text_segment(segments, ranked),
                              cfg.budgetChars);
    return snip;
}

// Baseline: the first match window in document reading order, extended
// rightward toward the budget; same head fallback on match-free pages.
inline Snippet build_simple_snippet(const std::vector<Segment>& segments,
                                    const Query& query,
                                    const SnippetConfig& cfg,
                                    const StopwordSet& stopwords,
                                    bool stemming = false) {
    Snippet snip;
    snip.mode = SnippetMode::Simple;
    for (const auto& seg : segments) {
        if (seg.text.empty()) continue;
        auto windows = match_segment(seg, query, cfg.matchWindowChars,
                                     stopwords, stemming);
        if (windows.empty()) continue;
        CharSpan span = windows.front().span;
        // Grow toward the budget, then shrink to fit it at word boundaries.
        std::size_t max_end = std::min(seg.text.size(), span.start + cfg.budgetChars);
        if (span.end < max_end)
            span.end = detail::head_span(
                           std::string_view(seg.text).substr(span.start),
                           cfg.budgetChars)
                           .end +
                       span.start;
        while (span.end - span.start > cfg.budgetChars) {
            std::size_t end = span.end - 1;
            while (end > span.start &&
                   !is_space_byte((unsigned char)seg.text[end]))
                --end;
            while (end > span.start &&
                   is_space_byte((unsigned char)seg.text[end - 1]))
                --end;
            if (end == span.start) {
                span.end = span.start + cfg.budgetChars;  // hard cut
                break;
            }
            span.end = end;
        }
        detail::append_fragment(snip, seg, span);
        return snip;
    }

    // No match anywhere: head of the first non-empty segment.
    for (const auto& seg : segments) {
        if (seg.text.empty()) continue;
        detail::fallback_head(snip, &seg, cfg.budgetChars);
        break;
    }
    return snip;
}

}  // namespace snipforge
