#pragma once

// Lenient HTML parsing. Never fails on malformed markup: unknown tags
// become plain elements, unclosed tags are closed implicitly, stray
// closing tags are ignored. Script, style and comment content is parsed
// but marked invisible; head/title text is kept out of the visible flow
// and captured separately for the theme vector.

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "snipforge/text.hpp"

namespace snipforge {

struct HtmlNode {
    enum class Kind { Element, Text };
    Kind kind = Kind::Text;
    std::string tag;   // lowercase, empty for text nodes
    std::string text;  // entity-decoded, text nodes only
    std::map<std::string, std::string> attrs;
    std::vector<std::unique_ptr<HtmlNode>> children;
    HtmlNode* parent = nullptr;

    bool is_element(std::string_view t) const {
        return kind == Kind::Element && tag == t;
    }
};

inline const std::set<std::string>& void_tags() {
    static const std::set<std::string> k = {
        "br",  "hr",   "img",   "meta",  "link", "input", "area",
        "base", "col", "embed", "source", "track", "wbr"};
    return k;
}

inline const std::set<std::string>& invisible_tags() {
    static const std::set<std::string> k = {"script", "style", "head",
                                            "title",  "noscript", "template"};
    return k;
}

// Tags treated as block-level for text flow (they force a break in the
// visible text) and for segmentation boundaries.
inline const std::set<std::string>& block_flow_tags() {
    static const std::set<std::string> k = {
        "address", "article", "aside",  "blockquote", "body",    "caption",
        "dd",      "div",     "dl",     "dt",         "fieldset", "figcaption",
        "figure",  "footer",  "form",   "h1",         "h2",      "h3",
        "h4",      "h5",      "h6",     "header",     "hr",      "html",
        "li",      "main",    "nav",    "ol",         "p",       "pre",
        "section", "table",   "tbody",  "td",         "tfoot",   "th",
        "thead",   "tr",      "ul"};
    return k;
}

namespace detail {

inline void append_utf8(std::string& out, unsigned long cp) {
    if (cp == 0 || cp > 0x10FFFF) cp = 0xFFFD;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0, n = s.size();
    while (i < n) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view name = s.substr(i + 1, semi - i - 1);
        if (name == "amp") out.push_back('&');
        else if (name == "lt") out.push_back('<');
        else if (name == "gt") out.push_back('>');
        else if (name == "quot") out.push_back('"');
        else if (name == "apos") out.push_back('\'');
        else if (name == "nbsp") out.push_back(' ');
        else if (!name.empty() && name[0] == '#') {
            unsigned long cp = 0;
            bool ok = false;
            if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) {
                for (char c : name.substr(2)) {
                    int d = std::isdigit((unsigned char)c) ? c - '0'
                            : std::isxdigit((unsigned char)c)
                                ? std::tolower((unsigned char)c) - 'a' + 10
                                : -1;
                    if (d < 0) { ok = false; break; }
                    cp = cp * 16 + static_cast<unsigned long>(d);
                    ok = true;
                }
            } else {
                for (char c : name.substr(1)) {
                    if (!std::isdigit((unsigned char)c)) { ok = false; break; }
                    cp = cp * 10 + static_cast<unsigned long>(c - '0');
                    ok = true;
                }
            }
            if (ok) append_utf8(out, cp);
            else { out.push_back(s[i]); ++i; continue; }
        } else {
            out.push_back(s[i++]);
            continue;
        }
        i = semi + 1;
    }
    return out;
}

inline std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        out.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(c))));
    return out;
}

}  // namespace detail

class HtmlDocument {
  public:
    explicit HtmlDocument(std::string_view raw) { parse(raw); }

    const HtmlNode& root() const { return *root_; }
    const std::string& title() const { return title_; }

  private:
    std::unique_ptr<HtmlNode> root_;
    std::string title_;

    void parse(std::string_view s) {
        root_ = std::make_unique<HtmlNode>();
        root_->kind = HtmlNode::Kind::Element;
        root_->tag = "#root";
        std::vector<HtmlNode*> stack{root_.get()};

        std::size_t i = 0;
        const std::size_t n = s.size();
        std::string text_buf;
        auto flush_text = [&] {
            if (text_buf.empty()) return;
            auto node = std::make_unique<HtmlNode>();
            node->kind = HtmlNode::Kind::Text;
            node->text = detail::decode_entities(text_buf);
            node->parent = stack.back();
            if (stack.back()->tag == "title") title_ += node->text;
            stack.back()->children.push_back(std::move(node));
            text_buf.clear();
        };

        while (i < n) {
            if (s[i] != '<') {
                text_buf.push_back(s[i++]);
                continue;
            }
            if (s.compare(i, 4, "<!--") == 0) {
                flush_text();
                std::size_t end = s.find("-->", i + 4);
                i = end == std::string_view::npos ? n : end + 3;
                continue;
            }
            if (i + 1 < n && (s[i + 1] == '!' || s[i + 1] == '?')) {
                flush_text();
                std::size_t end = s.find('>', i);
                i = end == std::string_view::npos ? n : end + 1;
                continue;
            }
            bool closing = i + 1 < n && s[i + 1] == '/';
            std::size_t name_start = i + (closing ? 2 : 1);
            std::size_t j = name_start;
            while (j < n && (std::isalnum((unsigned char)s[j]) || s[j] == '-'))
                ++j;
            if (j == name_start) {  // bare '<', treat as text
                text_buf.push_back(s[i++]);
                continue;
            }
            flush_text();
            std::string tag = detail::to_lower(s.substr(name_start, j - name_start));
            std::size_t gt = s.find('>', j);
            std::string_view attr_src =
                gt == std::string_view::npos ? s.substr(j) : s.substr(j, gt - j);
            bool self_close = !attr_src.empty() && attr_src.back() == '/';
            i = gt == std::string_view::npos ? n : gt + 1;

            if (closing) {
                // Pop to the matching open tag if present, else ignore.
                for (std::size_t k = stack.size(); k-- > 1;) {
                    if (stack[k]->tag == tag) {
                        stack.resize(k);
                        break;
                    }
                }
                continue;
            }

            auto node = std::make_unique<HtmlNode>();
            node->kind = HtmlNode::Kind::Element;
            node->tag = tag;
            parse_attrs(attr_src, node->attrs);
            node->parent = stack.back();
            HtmlNode* raw_node = node.get();

            // <p> and <li> close an open element of the same tag.
            if (tag == "p" || tag == "li") {
                for (std::size_t k = stack.size(); k-- > 1;) {
                    if (stack[k]->tag == tag) {
                        stack.resize(k);
                        raw_node->parent = stack.back();
                        break;
                    }
                }
            }
            stack.back()->children.push_back(std::move(node));

            if (tag == "script" || tag == "style") {
                // Raw text until the matching close tag.
                std::string close = "</" + tag;
                std::size_t end = i, m;
                std::string lower_s;  // search case-insensitively
                for (m = i; m + close.size() <= n; ++m) {
                    bool match = true;
                    for (std::size_t q = 0; q < close.size(); ++q) {
                        if (std::tolower((unsigned char)s[m + q]) != close[q]) {
                            match = false;
                            break;
                        }
                    }
                    if (match) break;
                }
                end = m + close.size() <= n ? m : n;
                if (end > i) {
                    auto body = std::make_unique<HtmlNode>();
                    body->kind = HtmlNode::Kind::Text;
                    body->text = std::string(s.substr(i, end - i));
                    body->parent = raw_node;
                    raw_node->children.push_back(std::move(body));
                }
                std::size_t gt2 = s.find('>', end);
                i = gt2 == std::string_view::npos ? n : gt2 + 1;
                continue;
            }

            if (!self_close && !void_tags().count(tag))
                stack.push_back(raw_node);
        }
        flush_text();
    }

    static void parse_attrs(std::string_view src,
                            std::map<std::string, std::string>& out) {
        std::size_t i = 0, n = src.size();
        while (i < n) {
            while (i < n && (std::isspace((unsigned char)src[i]) || src[i] == '/'))
                ++i;
            std::size_t name_start = i;
            while (i < n && !std::isspace((unsigned char)src[i]) &&
                   src[i] != '=' && src[i] != '/')
                ++i;
            if (i == name_start) break;
            std::string name = detail::to_lower(src.substr(name_start, i - name_start));
            while (i < n && std::isspace((unsigned char)src[i])) ++i;
            std::string value;
            if (i < n && src[i] == '=') {
                ++i;
                while (i < n && std::isspace((unsigned char)src[i])) ++i;
                if (i < n && (src[i] == '"' || src[i] == '\'')) {
                    char quote = src[i++];
                    std::size_t vstart = i;
                    while (i < n && src[i] != quote) ++i;
                    value = detail::decode_entities(src.substr(vstart, i - vstart));
                    if (i < n) ++i;
                } else {
                    std::size_t vstart = i;
                    while (i < n && !std::isspace((unsigned char)src[i])) ++i;
                    value = detail::decode_entities(src.substr(vstart, i - vstart));
                }
            }
            out.emplace(std::move(name), std::move(value));
        }
    }
};

}  // namespace snipforge
