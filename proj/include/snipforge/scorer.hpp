#pragma once

// Six-factor segment scoring: Freshness, Theme, Link, Visual, Profile
// and Image. Every factor is bounded in [0,1] and computable from the
// parsed page alone; the total is a multiplier-weighted sum (all
// multipliers default to 1, i.e. a plain sum). Each factor sits behind
// its own function so alternative definitions are drop-in.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "snipforge/dates.hpp"
#include "snipforge/segment.hpp"
#include "snipforge/text.hpp"

namespace snipforge {

struct SegmentScore {
    double f = 0, e = 0, l = 0, v = 0, r = 0, m = 0;
    double total = 0;
};

struct ScorerConfig {
    double wF = 1, wE = 1, wL = 1, wV = 1, wR = 1, wM = 1;
    std::optional<CalendarDate> freshnessReferenceDate;
    std::set<std::string> profileTerms;
};

struct PageContext {
    std::unordered_map<std::string, double> themeVector;  // title + h1/h2 tf
    double meanSegmentChars = 1.0;
    std::optional<CalendarDate> documentDate;
};

inline PageContext make_page_context(const SegmentedPage& page,
                                     const Document& doc,
                                     const StopwordSet& stopwords,
                                     bool stemming = false) {
    PageContext ctx;
    std::string theme_src = page.title;
    if (!page.headingsText.empty()) {
        if (!theme_src.empty()) theme_src.push_back(' ');
        theme_src += page.headingsText;
    }
    ctx.themeVector = term_frequencies(tokenize(theme_src, stopwords, stemming));
    double sum = 0;
    std::size_t n = 0;
    for (const auto& seg : page.segments) {
        if (seg.text.empty()) continue;
        sum += static_cast<double>(seg.text.size());
        ++n;
    }
    ctx.meanSegmentChars = n > 0 ? sum / static_cast<double>(n) : 1.0;
    ctx.documentDate = doc.fetchDate;
    return ctx;
}

// F: exponential decay over the age of the most recent date mentioned in
// the segment, one year as the decay constant. Segments without dates
// score 0; a reference date is required (document fetch date wins).
inline double freshness(const Segment& seg, const PageContext& ctx,
                        const ScorerConfig& cfg) {
    if (seg.dates.empty()) return 0.0;
    std::optional<CalendarDate> ref = ctx.documentDate;
    if (!ref) ref = cfg.freshnessReferenceDate;
    if (!ref) return 0.0;
    CalendarDate newest = *std::max_element(seg.dates.begin(), seg.dates.end());
    double delta_days =
        static_cast<double>(std::max<std::int64_t>(0, days_between(newest, *ref)));
    return std::exp(-delta_days / 365.0);
}

// E: cosine similarity between the segment's term vector and the page
// theme vector (title + top headings).
inline double theme(const Segment& seg, const PageContext& ctx,
                    const StopwordSet& stopwords, bool stemming = false) {
    if (ctx.themeVector.empty() || seg.text.empty()) return 0.0;
    auto seg_tf = term_frequencies(tokenize(seg.text, stopwords, stemming));
    return cosine_similarity(seg_tf, ctx.themeVector);
}

// L: share of non-anchor text. Navigation blocks score near 0.
inline double link_informativeness(const Segment& seg) {
    if (seg.text.empty()) return 0.0;
    double chars = static_cast<double>(std::max<std::size_t>(1, seg.text.size()));
    double l = 1.0 - static_cast<double>(seg.anchorChars) / chars;
    return std::clamp(l, 0.0, 1.0);
}

// V: visual prominence, half from carrying a heading, half from size
// relative to the page's mean segment length (saturating at twice it).
inline double visual(const Segment& seg, const PageContext& ctx) {
    double size_term =
        std::min(1.0, static_cast<double>(seg.text.size()) /
                          (2.0 * ctx.meanSegmentChars));
    return 0.5 * (seg.hasHeading ? 1.0 : 0.0) + 0.5 * size_term;
}

// R: fraction of profile terms present in the segment.
inline double profile(const Segment& seg, const ScorerConfig& cfg,
                      const StopwordSet& stopwords, bool stemming = false) {
    if (cfg.profileTerms.empty()) return 0.0;
    auto tokens = tokenize(seg.text, stopwords, stemming);
    std::set<std::string> present(tokens.begin(), tokens.end());
    std::size_t hits = 0;
    for (const auto& t : cfg.profileTerms)
        if (present.count(t)) ++hits;
    return static_cast<double>(hits) /
           static_cast<double>(cfg.profileTerms.size());
}

// M: image richness; an image whose alt text shares a token with the
// theme vector counts twice. Saturates at four effective images.
inline double image(const Segment& seg, const PageContext& ctx,
                    const StopwordSet& stopwords, bool stemming = false) {
    if (seg.images.empty()) return 0.0;
    std::size_t n = seg.images.size();
    std::size_t theme_alt = 0;
    for (const auto& alt : seg.images) {
        for (const auto& tok : tokenize(alt, stopwords, stemming)) {
            if (ctx.themeVector.count(tok)) {
                ++theme_alt;
                break;
            }
        }
    }
    return std::min(1.0, 0.25 * static_cast<double>(n + theme_alt));
}

inline SegmentScore score_segment(const Segment& seg, const PageContext& ctx,
                                  const ScorerConfig& cfg,
                                  const StopwordSet& stopwords,
                                  bool stemming = false) {
    SegmentScore s;
    s.f = freshness(seg, ctx, cfg);
    s.e = theme(seg, ctx, stopwords, stemming);
    s.l = link_informativeness(seg);
    s.v = visual(seg, ctx);
    s.r = profile(seg, cfg, stopwords, stemming);
    s.m = image(seg, ctx, stopwords, stemming);
    s.total = s.f * cfg.wF + s.e * cfg.wE + s.l * cfg.wL + s.v * cfg.wV +
              s.r * cfg.wR + s.m * cfg.wM;
    return s;
}

inline std::vector<SegmentScore> score_page(const SegmentedPage& page,
                                            const PageContext& ctx,
                                            const ScorerConfig& cfg,
                                            const StopwordSet& stopwords,
                                            bool stemming = false) {
    std::vector<SegmentScore> out;
    out.reserve(page.segments.size());
    for (const auto& seg : page.segments)
        out.push_back(score_segment(seg, ctx, cfg, stopwords, stemming));
    return out;
}

}  // namespace snipforge
