#pragma once

// DOM-heuristic page segmentation. A page is split into an ordered list
// of non-overlapping blocks by recursing at structural boundaries (div,
// section, lists, headings, hr, ...) until a node is small or has no
// block children; short text blocks are then merged forward. This stands
// in for vision-based segmentation without requiring a renderer.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snipforge/dates.hpp"
#include "snipforge/html.hpp"
#include "snipforge/text.hpp"

namespace snipforge {

struct Document {
    std::string id;
    std::string rawHtml;
    std::string url;
    std::optional<CalendarDate> fetchDate;
};

struct CharSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    bool operator==(const CharSpan&) const = default;
};

struct Segment {
    std::size_t ordinal = 0;
    CharSpan span;                 // into the page's visible text
    std::string text;              // whitespace-normalized substring at span
    std::size_t anchorChars = 0;   // characters inside hyperlink anchors
    std::vector<std::string> images;  // alt texts, reading order
    bool hasHeading = false;
    int headingDepth = 0;          // smallest heading level present, 0 = none
    std::vector<CalendarDate> dates;
};

struct SegmenterConfig {
    std::size_t minSplitChars = 200;
    std::size_t mergeBelowChars = 40;
};

struct SegmentedPage {
    std::string visibleText;
    std::string title;
    std::string headingsText;  // h1 + h2 text, feeds the theme vector
    std::vector<Segment> segments;
};

// Tags at which the splitting recursion may cut. hr is a hard separator:
// segments are never merged across it.
inline const std::set<std::string>& split_tags() {
    static const std::set<std::string> k = {
        "article", "aside", "blockquote", "body",   "div",  "figure",
        "footer",  "h1",    "h2",         "h3",     "h4",   "h5",
        "h6",      "header", "hr",        "html",   "main", "nav",
        "ol",      "pre",   "section",    "table",  "ul"};
    return k;
}

namespace detail {

inline int heading_level(const std::string& tag) {
    if (tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6')
        return tag[1] - '0';
    return 0;
}

// Visible-text flow: the text string plus per-character annotations used
// to fill segment features after spans are fixed.
struct Flow {
    std::string text;
    std::vector<unsigned char> anchor;   // 1 = emitted inside an <a>
    std::vector<unsigned char> heading;  // smallest enclosing heading level
    std::vector<std::pair<std::size_t, std::string>> images;  // (pos, alt)
    std::map<const HtmlNode*, CharSpan> ranges;
    std::string headingsText;

    enum class Sep { None, Block };
    Sep pending = Sep::None;
    bool pending_space = false;
    int anchor_depth = 0;
    int heading_ctx = 0;  // current smallest heading level, 0 = none

    void flush_separator() {
        if (text.empty()) {
            pending = Sep::None;
            pending_space = false;
            return;
        }
        char last = text.back();
        if (!is_space_byte(static_cast<unsigned char>(last))) {
            if (pending == Sep::Block) append_raw('\n');
            else if (pending_space) append_raw(' ');
        }
        pending = Sep::None;
        pending_space = false;
    }

    void append_raw(char c) {
        text.push_back(c);
        anchor.push_back(0);
        heading.push_back(0);
    }

    void append_char(char c) {
        text.push_back(c);
        anchor.push_back(anchor_depth > 0 ? 1 : 0);
        heading.push_back(static_cast<unsigned char>(heading_ctx));
    }

    void emit_text(const std::string& s) {
        for (unsigned char c : s) {
            if (is_space_byte(c)) {
                if (!text.empty()) pending_space = true;
            } else {
                flush_separator();
                append_char(static_cast<char>(c));
            }
        }
    }

    void walk(const HtmlNode& node) {
        std::size_t entry = text.size();
        if (node.kind == HtmlNode::Kind::Text) {
            emit_text(node.text);
            ranges[&node] = {entry, text.size()};
            return;
        }
        if (invisible_tags().count(node.tag)) {
            ranges[&node] = {entry, entry};
            return;
        }
        bool block = block_flow_tags().count(node.tag) > 0;
        if (block) pending = Sep::Block;
        if (node.tag == "br") pending = Sep::Block;
        if (node.tag == "img") {
            auto it = node.attrs.find("alt");
            images.emplace_back(text.size(), it != node.attrs.end() ? it->second : "");
            append_raw('\n');  // placeholder keeps image-only spans non-empty
            pending = Sep::None;
            pending_space = false;
            ranges[&node] = {entry, text.size()};
            return;
        }
        int hl = heading_level(node.tag);
        int saved_heading = heading_ctx;
        if (hl > 0 && (heading_ctx == 0 || hl < heading_ctx)) heading_ctx = hl;
        if (node.tag == "a") ++anchor_depth;

        std::size_t headings_mark = (hl == 1 || hl == 2) ? text.size() : 0;
        for (const auto& child : node.children) walk(*child);
        if (hl == 1 || hl == 2) {
            if (!headingsText.empty()) headingsText.push_back(' ');
            headingsText += normalize_whitespace(
                std::string_view(text).substr(headings_mark,
                                              text.size() - headings_mark));
        }

        if (node.tag == "a") --anchor_depth;
        heading_ctx = saved_heading;
        if (block) pending = Sep::Block;
        ranges[&node] = {entry, text.size()};
    }
};

struct RawRegion {
    CharSpan span;
    bool hard_before = false;  // an <hr> precedes this region
};

class RegionCollector {
  public:
    RegionCollector(const Flow& flow, const SegmenterConfig& cfg)
        : flow_(flow), cfg_(cfg) {}

    std::vector<RawRegion> collect(const HtmlNode& root) {
        visit(root);
        return std::move(regions_);
    }

  private:
    const Flow& flow_;
    const SegmenterConfig& cfg_;
    std::vector<RawRegion> regions_;
    bool next_hard_ = false;

    std::size_t trimmed_len(CharSpan s) const {
        auto [a, b] = trim(s);
        return b - a;
    }

    std::pair<std::size_t, std::size_t> trim(CharSpan s) const {
        std::size_t a = s.start, b = s.end;
        while (a < b && is_space_byte((unsigned char)flow_.text[a])) ++a;
        while (b > a && is_space_byte((unsigned char)flow_.text[b - 1])) --b;
        return {a, b};
    }

    void emit(CharSpan span) {
        if (span.start >= span.end) return;
        regions_.push_back({span, next_hard_});
        next_hard_ = false;
    }

    static bool has_split_child(const HtmlNode& node) {
        for (const auto& c : node.children)
            if (c->kind == HtmlNode::Kind::Element && split_tags().count(c->tag))
                return true;
        return false;
    }

    void visit(const HtmlNode& node) {
        CharSpan span = flow_.ranges.at(&node);
        if (trimmed_len(span) < cfg_.minSplitChars || !has_split_child(node)) {
            emit(span);
            return;
        }
        std::optional<CharSpan> run;
        auto flush_run = [&] {
            if (run) emit(*run);
            run.reset();
        };
        for (const auto& child : node.children) {
            const CharSpan cs = flow_.ranges.at(child.get());
            if (child->is_element("hr")) {
                flush_run();
                next_hard_ = true;
                continue;
            }
            if (child->kind == HtmlNode::Kind::Element &&
                split_tags().count(child->tag)) {
                flush_run();
                visit(*child);
                continue;
            }
            if (!run) run = cs;
            else run->end = cs.end;
        }
        flush_run();
    }
};

}  // namespace detail

// Fills anchor/heading/image/date features for a segment whose span and
// text are already fixed, from the page flow annotations.
namespace detail {
inline void fill_features(Segment& seg, const Flow& flow, CharSpan rawSpan) {
    seg.anchorChars = 0;
    seg.hasHeading = false;
    seg.headingDepth = 0;
    seg.images.clear();
    for (std::size_t i = seg.span.start; i < seg.span.end; ++i) {
        if (flow.anchor[i]) ++seg.anchorChars;
        int hl = flow.heading[i];
        if (hl > 0 && (seg.headingDepth == 0 || hl < seg.headingDepth))
            seg.headingDepth = hl;
    }
    seg.hasHeading = seg.headingDepth > 0;
    // Images are collected over the untrimmed region so a placeholder at
    // the region edge still counts.
    for (const auto& [pos, alt] : flow.images)
        if (pos >= rawSpan.start && pos < rawSpan.end)
            seg.images.push_back(alt);
    seg.dates = scan_dates(seg.text);
}
}  // namespace detail

inline SegmentedPage segment_page(std::string_view rawHtml,
                                  const SegmenterConfig& cfg = {}) {
    HtmlDocument dom(rawHtml);
    detail::Flow flow;
    flow.walk(dom.root());

    detail::RegionCollector collector(flow, cfg);
    auto regions = collector.collect(dom.root());

    // Regions -> candidate segments. Text regions are trimmed to their
    // non-whitespace extent; image-only regions keep the placeholder span.
    struct Candidate {
        CharSpan span;     // trimmed, what the segment claims
        CharSpan rawSpan;  // untrimmed region, used for image collection
        std::string text;
        bool hard_before = false;
    };
    std::vector<Candidate> cands;
    for (const auto& r : regions) {
        std::size_t a = r.span.start, b = r.span.end;
        while (a < b && is_space_byte((unsigned char)flow.text[a])) ++a;
        while (b > a && is_space_byte((unsigned char)flow.text[b - 1])) --b;
        bool has_image = false;
        for (const auto& [pos, alt] : flow.images)
            if (pos >= r.span.start && pos < r.span.end) has_image = true;
        if (a == b) {
            if (!has_image) continue;  // pure whitespace, nothing to keep
            cands.push_back({r.span, r.span, "", r.hard_before});
        } else {
            cands.push_back({CharSpan{a, b}, r.span,
                             normalize_whitespace(
                                 std::string_view(flow.text).substr(a, b - a)),
                             r.hard_before});
        }
    }

    // Merge short text segments forward (backward at the end of the page);
    // never across an <hr>, never image-only segments.
    std::vector<Candidate> merged;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        Candidate cur = cands[i];
        while (!cur.text.empty() && cur.text.size() < cfg.mergeBelowChars &&
               i + 1 < cands.size() && !cands[i + 1].hard_before &&
               !cands[i + 1].text.empty()) {
            const Candidate& next = cands[++i];
            cur.span.end = next.span.end;
            cur.rawSpan.end = next.rawSpan.end;
            cur.text = normalize_whitespace(std::string_view(flow.text).substr(
                cur.span.start, cur.span.end - cur.span.start));
        }
        if (!cur.text.empty() && cur.text.size() < cfg.mergeBelowChars &&
            !merged.empty() && !cur.hard_before && !merged.back().text.empty()) {
            Candidate& prev = merged.back();
            prev.span.end = cur.span.end;
            prev.rawSpan.end = cur.rawSpan.end;
            prev.text = normalize_whitespace(std::string_view(flow.text).substr(
                prev.span.start, prev.span.end - prev.span.start));
            continue;
        }
        merged.push_back(std::move(cur));
    }

    SegmentedPage page;
    page.visibleText = flow.text;
    page.title = normalize_whitespace(dom.title());
    page.headingsText = flow.headingsText;
    for (auto& c : merged) {
        Segment seg;
        seg.ordinal = page.segments.size();
        seg.span = c.span;
        seg.text = std::move(c.text);
        detail::fill_features(seg, flow, c.rawSpan);
        page.segments.push_back(std::move(seg));
    }
    return page;
}

}  // namespace snipforge
