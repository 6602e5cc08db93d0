// snipforge: build a local index over an HTML corpus and construct
// query-biased snippets from the highest-scored page segments.
//
// Subcommands: ingest, index, search, snippet, eval, config-dump.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "snipforge/config.hpp"
#include "snipforge/corpus.hpp"
#include "snipforge/errors.hpp"
#include "snipforge/eval.hpp"
#include "snipforge/index.hpp"
#include "snipforge/scorer.hpp"
#include "snipforge/segment.hpp"
#include "snipforge/snippet.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

std::string resolve_config_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SNIPFORGE_CONFIG")) return env;
    if (fs::exists("snipforge.json")) return "snipforge.json";
    return "";
}

snipforge::Corpus load_ingested(const fs::path& data_dir) {
    fs::path corpus_dir = data_dir / "corpus";
    if (!fs::is_directory(corpus_dir))
        throw snipforge::DataError(
            "no ingested corpus at " + corpus_dir.string() +
            "; run `snipforge ingest <dir>` first");
    return snipforge::load_corpus_dir(corpus_dir);
}

snipforge::InvertedIndex load_built_index(const fs::path& data_dir) {
    fs::path path = data_dir / "index.json";
    if (!fs::exists(path))
        throw snipforge::DataError("no index at " + path.string() +
                                   "; run `snipforge index` first");
    return snipforge::load_index(path.string());
}

json snippet_to_json(const std::string& doc_id, const snipforge::Snippet& s) {
    json frags = json::array();
    for (const auto& f : s.fragments)
        frags.push_back({{"segment", f.segmentOrdinal},
                         {"start", f.span.start},
                         {"end", f.span.end},
                         {"text", f.text}});
    return {{"doc_id", doc_id},
            {"mode", s.mode == snipforge::SnippetMode::Semantic ? "semantic"
                                                                : "simple"},
            {"rendered", s.rendered},
            {"fragments", std::move(frags)}};
}

struct PageAnalysis {
    snipforge::SegmentedPage page;
    std::vector<snipforge::SegmentScore> scores;
};

PageAnalysis analyze(const snipforge::Document& doc,
                     const snipforge::AppConfig& cfg,
                     const snipforge::StopwordSet& stopwords) {
    PageAnalysis out;
    out.page = snipforge::segment_page(doc.rawHtml, cfg.segmenter_config());
    auto ctx = snipforge::make_page_context(out.page, doc, stopwords,
                                            cfg.stemming);
    out.scores = snipforge::score_page(out.page, ctx, cfg.scorer_config(),
                                       stopwords, cfg.stemming);
    return out;
}

snipforge::Snippet build_snippet(const PageAnalysis& a,
                                 const snipforge::Query& query,
                                 const snipforge::AppConfig& cfg,
                                 const snipforge::StopwordSet& stopwords,
                                 const std::string& mode) {
    if (mode == "simple")
        return snipforge::build_simple_snippet(a.page.segments, query,
                                               cfg.snippet_config(), stopwords,
                                               cfg.stemming);
    return snipforge::build_semantic_snippet(a.page.segments, a.scores, query,
                                             cfg.snippet_config(), stopwords,
                                             cfg.stemming);
}

int cmd_ingest(const fs::path& data_dir, const std::string& src_dir) {
    auto corpus = snipforge::load_corpus_dir(src_dir);
    fs::path dest = data_dir / "corpus";
    fs::create_directories(dest);
    for (const auto& entry : fs::directory_iterator(src_dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension();
        if (ext != ".html" && ext != ".meta") continue;
        fs::copy_file(entry.path(), dest / entry.path().filename(),
                      fs::copy_options::overwrite_existing);
    }
    std::cout << "ingested " << corpus.size() << " documents into "
              << dest.string() << "\n";
    return kExitOk;
}

int cmd_index(const fs::path& data_dir, const snipforge::AppConfig& cfg) {
    auto stopwords = snipforge::load_stopwords(cfg.stopwordsPath);
    auto corpus = load_ingested(data_dir);
    snipforge::InvertedIndex index(stopwords, cfg.stemming);
    for (const auto& doc : corpus.documents()) {
        auto page = snipforge::segment_page(doc.rawHtml, cfg.segmenter_config());
        index.add_document({doc.id, doc.url,
                            doc.fetchDate ? snipforge::format_date(*doc.fetchDate)
                                          : std::string(),
                            page.visibleText});
    }
    fs::create_directories(data_dir);
    snipforge::save_index(index, (data_dir / "index.json").string());
    std::cout << "indexed " << index.doc_count() << " documents -> "
              << (data_dir / "index.json").string() << "\n";
    return kExitOk;
}

int cmd_search(const fs::path& data_dir, const snipforge::AppConfig& cfg,
               const std::string& query_str, const std::string& mode,
               bool as_json) {
    auto index = load_built_index(data_dir);
    auto corpus = load_ingested(data_dir);
    auto query = snipforge::make_query(query_str, index.stopwords(),
                                       index.stemming());
    if (query.terms.empty())
        throw snipforge::DataError("query has no indexable terms: " + query_str);
    auto results = index.retrieve(query, cfg.mu);

    json out = json::array();
    for (const auto& item : results.items) {
        const auto& doc = corpus.get(item.docId);
        auto a = analyze(doc, cfg, index.stopwords());
        auto snip = build_snippet(a, query, cfg, index.stopwords(), mode);
        if (as_json) {
            json entry = {{"doc_id", item.docId}, {"score", item.score}};
            entry["snippet"] = snippet_to_json(item.docId, snip);
            out.push_back(std::move(entry));
        } else {
            std::cout << item.docId << "  (" << item.score << ")\n    "
                      << snip.rendered << "\n";
        }
    }
    if (as_json) std::cout << out.dump(1) << "\n";
    else if (results.items.empty()) std::cout << "no results\n";
    return kExitOk;
}

int cmd_snippet(const fs::path& data_dir, const snipforge::AppConfig& cfg,
                const std::string& doc_id, const std::string& query_str,
                const std::string& mode) {
    auto index = load_built_index(data_dir);
    auto corpus = load_ingested(data_dir);
    const auto& doc = corpus.get(doc_id);
    auto query = snipforge::make_query(query_str, index.stopwords(),
                                       index.stemming());
    auto a = analyze(doc, cfg, index.stopwords());
    auto snip = build_snippet(a, query, cfg, index.stopwords(), mode);
    std::cout << snippet_to_json(doc_id, snip).dump(1) << "\n";
    return kExitOk;
}

int cmd_eval(const fs::path& data_dir, const snipforge::AppConfig& cfg,
             const std::string& sessions_path, const std::string& out_dir) {
    auto index = load_built_index(data_dir);
    auto corpus = load_ingested(data_dir);

    json sessions_json;
    try {
        std::ifstream in(sessions_path);
        if (!in) throw snipforge::DataError("cannot open session file: " +
                                            sessions_path);
        in >> sessions_json;
    } catch (const json::exception& e) {
        throw snipforge::DataError(std::string("malformed session file: ") +
                                   e.what());
    }
    if (!sessions_json.is_array())
        throw snipforge::DataError("session file must be a JSON array");

    std::vector<snipforge::SessionResult> results;
    auto eval_cfg = cfg.eval_config();
    for (const auto& s : sessions_json) {
        snipforge::SessionSpec spec{s.value("id", std::string()),
                                    s.value("query", std::string())};
        if (spec.query.empty())
            throw snipforge::DataError("session entry missing query");
        results.push_back(snipforge::run_session(
            spec, index,
            [&](const std::string& id) -> const snipforge::Document& {
                return corpus.get(id);
            },
            eval_cfg));
    }
    auto report = snipforge::summarize(std::move(results));
    snipforge::emit_report(report, out_dir);
    std::cout << "sessions=" << report.sessions.size()
              << " mean_simple=" << report.meanSimple
              << " mean_semantic=" << report.meanSemantic << "\n"
              << "wrote " << out_dir << "/table1.csv, summary.json, items.jsonl\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"query-biased semantic snippet engine"};
    app.require_subcommand(1);

    std::string data_dir = "snipforge-data";
    std::string config_path;
    app.add_option("--data-dir", data_dir, "workspace directory");
    app.add_option("--config", config_path, "config file (flat JSON)");

    auto* ingest = app.add_subcommand("ingest", "copy an HTML corpus into the workspace");
    std::string src_dir;
    ingest->add_option("dir", src_dir, "directory of *.html (+ optional *.meta)")
        ->required();

    auto* index_cmd = app.add_subcommand("index", "build the inverted index");

    auto* search = app.add_subcommand("search", "query the index and print snippets");
    std::string query_str, mode = "semantic";
    bool as_json = false;
    search->add_option("query", query_str, "query string")->required();
    search->add_option("--mode", mode, "semantic | simple")
        ->check(CLI::IsMember({"semantic", "simple"}));
    search->add_flag("--json", as_json, "machine-readable output");

    auto* snippet_cmd = app.add_subcommand("snippet", "build one document's snippet");
    std::string doc_id, snip_query, snip_mode = "semantic";
    snippet_cmd->add_option("doc-id", doc_id)->required();
    snippet_cmd->add_option("query", snip_query)->required();
    snippet_cmd->add_option("--mode", snip_mode, "semantic | simple")
        ->check(CLI::IsMember({"semantic", "simple"}));

    auto* eval_cmd = app.add_subcommand("eval", "run sessions under both modes");
    std::string sessions_path, eval_out = "eval-out";
    eval_cmd->add_option("--sessions", sessions_path, "JSON array of {id, query}")
        ->required();
    eval_cmd->add_option("--out", eval_out, "output directory");

    auto* dump = app.add_subcommand("config-dump", "print the effective config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        auto cfg = snipforge::load_config(resolve_config_path(config_path));
        fs::path data(data_dir);
        if (*ingest) return cmd_ingest(data, src_dir);
        if (*index_cmd) return cmd_index(data, cfg);
        if (*search) return cmd_search(data, cfg, query_str, mode, as_json);
        if (*snippet_cmd)
            return cmd_snippet(data, cfg, doc_id, snip_query, snip_mode);
        if (*eval_cmd) return cmd_eval(data, cfg, sessions_path, eval_out);
        if (*dump) {
            std::cout << cfg.to_json().dump(1) << "\n";
            return kExitOk;
        }
    } catch (const snipforge::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const snipforge::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
