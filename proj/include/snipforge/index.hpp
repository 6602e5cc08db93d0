#pragma once

// Persistent inverted index with tf-idf cosine retrieval. The index is
// built once (single writer) and immutable afterwards; retrieval holds
// no mutable state.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "snipforge/errors.hpp"
#include "snipforge/text.hpp"

namespace snipforge {

inline constexpr std::string_view kIndexFormatVersion = "snipforge-index-1";

struct Query {
    std::string raw;
    std::vector<std::string> terms;  // deduplicated, first-occurrence order
};

inline Query make_query(std::string raw, const StopwordSet& stopwords,
                        bool stemming = false) {
    Query q{std::move(raw), {}};
    for (auto& t : tokenize(q.raw, stopwords, stemming))
        if (std::find(q.terms.begin(), q.terms.end(), t) == q.terms.end())
            q.terms.push_back(std::move(t));
    return q;
}

struct ScoredDoc {
    std::string docId;
    double score = 0.0;
    bool operator==(const ScoredDoc&) const = default;
};

struct ResultList {
    std::vector<ScoredDoc> items;  // score non-increasing, ties by id
    std::size_t mu = 0;
};

struct IndexableDoc {
    std::string id;
    std::string url;
    std::string fetchDate;  // ISO string or empty
    std::string text;       // visible text to index
};

class InvertedIndex {
  public:
    struct DocEntry {
        std::string id;
        std::string url;
        std::string fetchDate;
        std::uint64_t length = 0;  // total term count
        bool operator==(const DocEntry&) const = default;
    };
    using Posting = std::pair<std::uint32_t, std::uint32_t>;  // (ordinal, tf)

    InvertedIndex() = default;
    InvertedIndex(StopwordSet stopwords, bool stemming)
        : stopwords_(std::move(stopwords)), stemming_(stemming) {}

    std::size_t doc_count() const { return docs_.size(); }
    const std::vector<DocEntry>& docs() const { return docs_; }
    const std::map<std::string, std::vector<Posting>>& postings() const {
        return postings_;
    }
    const StopwordSet& stopwords() const { return stopwords_; }
    bool stemming() const { return stemming_; }

    bool operator==(const InvertedIndex& other) const {
        return docs_ == other.docs_ && postings_ == other.postings_ &&
               stopwords_ == other.stopwords_ && stemming_ == other.stemming_;
    }

    void add_document(const IndexableDoc& doc) {
        if (ordinal_of_.count(doc.id)) throw DuplicateDocumentError(doc.id);
        auto tokens = tokenize(doc.text, stopwords_, stemming_);
        std::uint32_t ordinal = static_cast<std::uint32_t>(docs_.size());
        ordinal_of_[doc.id] = ordinal;
        docs_.push_back({doc.id, doc.url, doc.fetchDate, tokens.size()});

        std::map<std::string, std::uint32_t> tf;
        for (const auto& t : tokens) ++tf[t];
        for (const auto& [term, count] : tf) {
            auto& list = postings_[term];
            list.emplace_back(ordinal, count);
            // Keep postings sorted by document id ascending.
            std::sort(list.begin(), list.end(),
                      [&](const Posting& a, const Posting& b) {
                          return docs_[a.first].id < docs_[b.first].id;
                      });
        }
    }

    // tf-idf cosine between the query term vector and each document's
    // term vector; idf = ln(1 + N/df). Zero-score documents are excluded
    // and the list is cut to mu items.
    ResultList retrieve(const Query& query, std::size_t mu) const {
        if (mu == 0) throw std::invalid_argument("mu must be positive");
        if (query.terms.empty()) throw DataError("query has no indexable terms");
        ResultList result;
        result.mu = mu;
        if (docs_.empty()) return result;

        std::vector<double> doc_norm2(docs_.size(), 0.0);
        for (const auto& [term, list] : postings_) {
            double idf = this->idf(list.size());
            for (const auto& [ord, tf] : list) {
                double w = tf * idf;
                doc_norm2[ord] += w * w;
            }
        }

        std::vector<double> dot(docs_.size(), 0.0);
        double query_norm2 = 0.0;
        for (const auto& term : query.terms) {
            auto it = postings_.find(term);
            double idf = it == postings_.end() ? this->idf(0) : this->idf(it->second.size());
            double qw = idf;  // query tf is 1 after deduplication
            query_norm2 += qw * qw;
            if (it == postings_.end()) continue;
            for (const auto& [ord, tf] : it->second) dot[ord] += qw * tf * idf;
        }
        if (query_norm2 == 0.0) return result;

        for (std::size_t ord = 0; ord < docs_.size(); ++ord) {
            if (dot[ord] <= 0.0) continue;
            double score = dot[ord] / (std::sqrt(query_norm2) * std::sqrt(doc_norm2[ord]));
            result.items.push_back({docs_[ord].id, score});
        }
        std::sort(result.items.begin(), result.items.end(),
                  [](const ScoredDoc& a, const ScoredDoc& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.docId < b.docId;
                  });
        if (result.items.size() > mu) result.items.resize(mu);
        return result;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["meta"] = {{"format_version", kIndexFormatVersion},
                     {"stopwords", stopwords_},
                     {"stemming", stemming_}};
        j["docs"] = nlohmann::json::array();
        for (const auto& d : docs_)
            j["docs"].push_back({{"id", d.id},
                                 {"url", d.url},
                                 {"fetch_date", d.fetchDate},
                                 {"length", d.length}});
        nlohmann::json posts = nlohmann::json::object();
        for (const auto& [term, list] : postings_) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& [ord, tf] : list) arr.push_back({ord, tf});
            posts[term] = std::move(arr);
        }
        j["postings"] = std::move(posts);
        return j;
    }

    static InvertedIndex from_json(const nlohmann::json& j) {
        InvertedIndex idx;
        if (!j.is_object() || !j.contains("meta") || !j["meta"].is_object())
            throw IndexLoadError("meta: missing or not an object");
        const auto& meta = j["meta"];
        if (!meta.contains("format_version") ||
            meta["format_version"] != kIndexFormatVersion)
            throw IndexLoadError("meta: unsupported format_version");
        if (!meta.contains("stopwords") || !meta["stopwords"].is_array())
            throw IndexLoadError("meta: stopwords missing or not an array");
        for (const auto& s : meta["stopwords"])
            idx.stopwords_.insert(s.get<std::string>());
        idx.stemming_ = meta.value("stemming", false);

        if (!j.contains("docs") || !j["docs"].is_array())
            throw IndexLoadError("docs: missing or not an array");
        for (const auto& d : j["docs"]) {
            if (!d.is_object() || !d.contains("id"))
                throw IndexLoadError("docs: entry missing id");
            DocEntry e;
            e.id = d["id"].get<std::string>();
            e.url = d.value("url", std::string());
            e.fetchDate = d.value("fetch_date", std::string());
            e.length = d.value("length", std::uint64_t{0});
            if (idx.ordinal_of_.count(e.id))
                throw IndexLoadError("docs: duplicate id " + e.id);
            idx.ordinal_of_[e.id] = idx.docs_.size();
            idx.docs_.push_back(std::move(e));
        }

        if (!j.contains("postings") || !j["postings"].is_object())
            throw IndexLoadError("postings: missing or not an object");
        for (const auto& [term, arr] : j["postings"].items()) {
            if (!arr.is_array())
                throw IndexLoadError("postings: entry for '" + term +
                                     "' is not an array");
            std::vector<Posting> list;
            for (const auto& p : arr) {
                if (!p.is_array() || p.size() != 2)
                    throw IndexLoadError("postings: malformed pair under '" +
                                         term + "'");
                std::uint32_t ord = p[0].get<std::uint32_t>();
                std::uint32_t tf = p[1].get<std::uint32_t>();
                if (ord >= idx.docs_.size())
                    throw IndexLoadError("postings: ordinal out of range under '" +
                                         term + "'");
                if (tf < 1)
                    throw IndexLoadError("postings: zero term frequency under '" +
                                         term + "'");
                list.emplace_back(ord, tf);
            }
            idx.postings_[term] = std::move(list);
        }
        return idx;
    }

  private:
    double idf(std::size_t df) const {
        if (df == 0) return 0.0;
        return std::log(1.0 + static_cast<double>(docs_.size()) /
                                  static_cast<double>(df));
    }

    std::vector<DocEntry> docs_;
    std::unordered_map<std::string, std::size_t> ordinal_of_;
    std::map<std::string, std::vector<Posting>> postings_;
    StopwordSet stopwords_;
    bool stemming_ = false;
};

inline void save_index(const InvertedIndex& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open index file for writing: " + path);
    out << index.to_json().dump(1) << '\n';
    if (!out) throw DataError("failed writing index file: " + path);
}

inline InvertedIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IndexLoadError("cannot open index file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IndexLoadError(std::string("index file is not valid JSON: ") +
                             e.what());
    }
    return InvertedIndex::from_json(j);
}

}  // namespace snipforge
