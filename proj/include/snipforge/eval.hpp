#pragma once

// Desk-scale evaluation harness: runs query sessions under both snippet
// modes and counts "judgeable" result items with a deterministic proxy
// (full query-term coverage + majority non-boilerplate provenance),
// then emits a Table-1-shaped CSV, a summary JSON and an audit JSONL.

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snipforge/errors.hpp"
#include "snipforge/index.hpp"
#include "snipforge/scorer.hpp"
#include "snipforge/segment.hpp"
#include "snipforge/snippet.hpp"

namespace snipforge {

struct SessionSpec {
    std::string id;
    std::string query;
};

struct JudgeConfig {
    double minProvenanceShare = 0.6;  // judgeable-character share required
    double linkThreshold = 0.5;       // L below this marks boilerplate
};

struct ItemRecord {
    std::string sessionId;
    std::string docId;
    std::string mode;  // "simple" | "semantic"
    bool judgeable = false;
    std::string rendered;
};

struct SessionResult {
    std::string id;
    std::string query;
    std::size_t itemsEvaluated = 0;
    std::size_t simpleCount = 0;
    std::size_t semanticCount = 0;
    bool emptyRetrieval = false;
    std::vector<ItemRecord> items;
};

struct JudgeabilityReport {
    std::vector<SessionResult> sessions;
    double meanSimple = 0;
    double meanSemantic = 0;
};

// A result item is explicitly judgeable when (a) every query term occurs
// in the rendered snippet and (b) at least minProvenanceShare of the
// fragment characters come from segments whose link-informativeness
// clears linkThreshold.
inline bool is_judgeable(const Snippet& snippet, const Query& query,
                         const std::vector<Segment>& segments,
                         const std::vector<SegmentScore>& scores,
                         const JudgeConfig& jcfg, const StopwordSet& stopwords,
                         bool stemming = false) {
    if (snippet.fragments.empty() || query.terms.empty()) return false;
    auto tokens = tokenize(snippet.rendered, stopwords, stemming);
    std::set<std::string> present(tokens.begin(), tokens.end());
    for (const auto& t : query.terms)
        if (!present.count(t)) return false;

    std::size_t total_chars = 0, clean_chars = 0;
    for (const auto& frag : snippet.fragments) {
        total_chars += frag.text.size();
        if (scores[frag.segmentOrdinal].l >= jcfg.linkThreshold)
            clean_chars += frag.text.size();
    }
    if (total_chars == 0) return false;
    return static_cast<double>(clean_chars) /
               static_cast<double>(total_chars) >=
           jcfg.minProvenanceShare;
}

struct EvalConfig {
    std::size_t mu = 10;
    SegmenterConfig segmenter;
    ScorerConfig scorer;
    SnippetConfig snippet;
    JudgeConfig judge;
};

// Corpus access for the harness: resolve a document id to its content.
using CorpusLookup = std::function<const Document&(const std::string&)>;

inline SessionResult run_session(const SessionSpec& spec,
                                 const InvertedIndex& index,
                                 const CorpusLookup& corpus,
                                 const EvalConfig& cfg) {
    SessionResult result;
    result.id = spec.id;
    result.query = spec.query;
    Query query = make_query(spec.query, index.stopwords(), index.stemming());
    if (query.terms.empty()) {
        result.emptyRetrieval = true;
        return result;
    }
    ResultList retrieved = index.retrieve(query, cfg.mu);
    if (retrieved.items.empty()) {
        result.emptyRetrieval = true;
        return result;
    }
    for (const auto& item : retrieved.items) {
        const Document& doc = corpus(item.docId);
        SegmentedPage page = segment_page(doc.rawHtml, cfg.segmenter);
        PageContext ctx = make_page_context(page, doc, index.stopwords(),
                                            index.stemming());
        auto scores = score_page(page, ctx, cfg.scorer, index.stopwords(),
                                 index.stemming());

        Snippet semantic = build_semantic_snippet(
            page.segments, scores, query, cfg.snippet, index.stopwords(),
            index.stemming());
        Snippet simple = build_simple_snippet(page.segments, query, cfg.snippet,
                                              index.stopwords(),
                                              index.stemming());

        bool sem_ok = is_judgeable(semantic, query, page.segments, scores,
                                   cfg.judge, index.stopwords(),
                                   index.stemming());
        bool sim_ok = is_judgeable(simple, query, page.segments, scores,
                                   cfg.judge, index.stopwords(),
                                   index.stemming());
        if (sem_ok) ++result.semanticCount;
        if (sim_ok) ++result.simpleCount;
        ++result.itemsEvaluated;
        result.items.push_back(
            {spec.id, item.docId, "simple", sim_ok, simple.rendered});
        result.items.push_back(
            {spec.id, item.docId, "semantic", sem_ok, semantic.rendered});
    }
    return result;
}

inline JudgeabilityReport summarize(std::vector<SessionResult> sessions) {
    JudgeabilityReport report;
    report.sessions = std::move(sessions);
    if (report.sessions.empty()) return report;
    double sim = 0, sem = 0;
    for (const auto& s : report.sessions) {
        sim += static_cast<double>(s.simpleCount);
        sem += static_cast<double>(s.semanticCount);
    }
    report.meanSimple = sim / static_cast<double>(report.sessions.size());
    report.meanSemantic = sem / static_cast<double>(report.sessions.size());
    return report;
}

inline std::string report_csv(const JudgeabilityReport& report) {
    std::string csv = "row";
    for (const auto& s : report.sessions) csv += "," + s.id;
    csv += "\nsimple";
    for (const auto& s : report.sessions)
        csv += "," + std::to_string(s.simpleCount);
    csv += "\nsemantic";
    for (const auto& s : report.sessions)
        csv += "," + std::to_string(s.semanticCount);
    csv += "\n";
    return csv;
}

inline nlohmann::json report_summary_json(const JudgeabilityReport& report) {
    return {{"mean_simple", report.meanSimple},
            {"mean_semantic", report.meanSemantic},
            {"sessions", report.sessions.size()}};
}

inline std::string report_items_jsonl(const JudgeabilityReport& report) {
    std::string out;
    for (const auto& s : report.sessions) {
        for (const auto& item : s.items) {
            nlohmann::json j = {{"session", item.sessionId},
                                {"doc_id", item.docId},
                                {"mode", item.mode},
                                {"judgeable", item.judgeable},
                                {"rendered", item.rendered}};
            out += j.dump();
            out += '\n';
        }
        if (s.emptyRetrieval) {
            nlohmann::json j = {{"session", s.id},
                                {"flag", "empty_retrieval"},
                                {"query", s.query}};
            out += j.dump();
            out += '\n';
        }
    }
    return out;
}

// Writes table1.csv, summary.json and items.jsonl into outDir. Content
// is rendered up front and the directory probed first, so an unwritable
// path fails before anything lands on disk.
inline void emit_report(const JudgeabilityReport& report,
                        const std::filesystem::path& outDir) {
    std::string csv = report_csv(report);
    std::string summary = report_summary_json(report).dump(1) + "\n";
    std::string items = report_items_jsonl(report);

    std::error_code ec;
    std::filesystem::create_directories(outDir, ec);
    auto probe = outDir / ".write-probe";
    {
        std::ofstream test(probe, std::ios::binary);
        if (!test) throw DataError("output path not writable: " + outDir.string());
    }
    std::filesystem::remove(probe, ec);

    auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(outDir / name, std::ios::binary);
        if (!out) throw DataError(std::string("cannot write ") + name);
        out << content;
    };
    write("table1.csv", csv);
    write("summary.json", summary);
    write("items.jsonl", items);
}

}  // namespace snipforge
