// Acceptance suite: one check per release criterion, each printed as a
// single pass/fail line with its runtime. Exits nonzero if any check
// fails or overruns its time budget.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snipforge/config.hpp"
#include "snipforge/corpus.hpp"
#include "snipforge/eval.hpp"
#include "snipforge/index.hpp"
#include "snipforge/scorer.hpp"
#include "snipforge/segment.hpp"
#include "snipforge/snippet.hpp"
#include "snipforge/synthetic.hpp"

#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace snipforge;

namespace {

struct Check {
    std::string name;
    double time_limit_s;  // <= 0 means no limit
    std::function<bool(std::string&)> fn;
};

std::vector<std::string> fixture_pages() {
    std::vector<std::string> pages = {
        support::read_file(support::fixture_path("three_sentences.html")),
        support::read_file(support::fixture_path("sixblock.html")),
        support::read_file(support::fixture_path("boilerplate.html")),
    };
    for (int i = 1; i <= 10; ++i) {
        std::string name = "corpus10/d" + std::string(i < 10 ? "0" : "") +
                           std::to_string(i) + ".html";
        pages.push_back(support::read_file(support::fixture_path(name)));
    }
    return pages;
}

// ---------------------------------------------------------------------
// 1. Reference arithmetic: the fifteen recorded per-session counts must
//    reproduce means 3.4 (simple) and 8.2 (semantic) through the full
//    report path, file output included.
bool check_reference_means(std::string& why) {
    const std::vector<std::size_t> simple = {2, 3, 4, 5, 1, 7, 3, 5,
                                             6, 0, 6, 1, 5, 2, 1};
    const std::vector<std::size_t> semantic = {8, 7, 9, 8, 10, 8, 9, 9,
                                               10, 7, 9, 6, 8, 7, 8};
    std::vector<SessionResult> sessions;
    for (std::size_t i = 0; i < simple.size(); ++i) {
        SessionResult r;
        r.id = "s" + std::to_string(i + 1);
        r.simpleCount = simple[i];
        r.semanticCount = semantic[i];
        sessions.push_back(std::move(r));
    }
    auto report = summarize(std::move(sessions));

    auto dir = fs::temp_directory_path() / "snipforge-acceptance-report";
    fs::remove_all(dir);
    emit_report(report, dir);
    auto summary = json::parse(support::read_file((dir / "summary.json").string()));
    fs::remove_all(dir);

    double mean_simple = summary["mean_simple"].get<double>();
    double mean_semantic = summary["mean_semantic"].get<double>();
    if (std::abs(mean_simple - 3.4) > 0.05) {
        why = "mean_simple = " + std::to_string(mean_simple);
        return false;
    }
    if (std::abs(mean_semantic - 8.2) > 0.05) {
        why = "mean_semantic = " + std::to_string(mean_semantic);
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------
// 2. Dominance: on the seeded synthetic boilerplate corpus (>= 100
//    pages, 15 sessions) the semantic count must be >= the simple count
//    in every session and strictly greater in at least 80% of them.
bool check_dominance(std::string& why) {
    auto synth = make_boilerplate_corpus(2011, 105);
    if (synth.documents.size() < 100 || synth.sessions.size() != 15) {
        why = "corpus shape: " + std::to_string(synth.documents.size()) +
              " pages, " + std::to_string(synth.sessions.size()) + " sessions";
        return false;
    }
    Corpus corpus;
    InvertedIndex index(builtin_stopwords(), false);
    for (const auto& doc : synth.documents) {
        index.add_document(
            {doc.id, doc.url, "", segment_page(doc.rawHtml).visibleText});
        corpus.add(doc);
    }
    EvalConfig cfg;
    std::size_t ge = 0, gt = 0;
    for (const auto& spec : synth.sessions) {
        auto r = run_session(spec, index,
                             [&](const std::string& id) -> const Document& {
                                 return corpus.get(id);
                             },
                             cfg);
        if (r.semanticCount >= r.simpleCount) ++ge;
        if (r.semanticCount > r.simpleCount) ++gt;
    }
    if (ge != synth.sessions.size()) {
        why = "semantic >= simple in only " + std::to_string(ge) + "/15";
        return false;
    }
    if (gt * 5 < synth.sessions.size() * 4) {
        why = "strictly greater in only " + std::to_string(gt) + "/15";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------
// 3. Retrieval oracle: index-based retrieval must match a brute-force
//    tf-idf cosine scorer exactly on 20 random corpora.
bool check_retrieval_oracle(std::string& why) {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 20; ++trial) {
        auto docs = support::random_corpus(rng, 50);
        auto terms = support::random_query(rng);
        std::string query_str;
        for (const auto& t : terms) {
            if (!query_str.empty()) query_str += ' ';
            query_str += t;
        }

        InvertedIndex index({}, false);
        for (const auto& d : docs) index.add_document({d.id, "", "", d.text});
        auto got = index.retrieve(make_query(query_str, {}), 10);
        auto want = support::brute_force_retrieve(docs, terms, 10, {});

        if (got.items.size() != want.size()) {
            why = "trial " + std::to_string(trial) + ": " +
                  std::to_string(got.items.size()) + " results, oracle has " +
                  std::to_string(want.size());
            return false;
        }
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (got.items[i].docId != want[i].first) {
                why = "trial " + std::to_string(trial) + " rank " +
                      std::to_string(i) + ": " + got.items[i].docId + " vs " +
                      want[i].first;
                return false;
            }
            if (std::abs(got.items[i].score - want[i].second) > 1e-9) {
                why = "trial " + std::to_string(trial) + " rank " +
                      std::to_string(i) + ": score drift";
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------
// 4. Segmentation coverage: on every fixture page and 200 fuzzed HTML
//    inputs the segment spans must tile the visible text (up to
//    whitespace), stay disjoint, and carry ordered ordinals.
bool check_segmentation_coverage(std::string& why) {
    auto inputs = fixture_pages();
    std::mt19937 rng(31337);
    for (int i = 0; i < 200; ++i) inputs.push_back(support::fuzz_html(rng));

    for (std::size_t i = 0; i < inputs.size(); ++i) {
        auto page = segment_page(inputs[i]);
        std::string detail;
        if (!support::check_coverage(page, &detail)) {
            why = "input " + std::to_string(i) + ": " + detail;
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------
// 5. Scorer invariants over >= 1000 generated segments: every factor in
//    [0,1], weighted total additive within 1e-9, and the segment
//    ordering invariant under uniform multiplier scaling.
bool check_scorer_invariants(std::string& why) {
    std::mt19937 rng(7331);
    PageContext ctx;
    ctx.meanSegmentChars = 60;
    ctx.themeVector = term_frequencies(tokenize("ridge tarn mesa", {}));
    ctx.documentDate = CalendarDate{2011, 6, 1};
    std::uniform_real_distribution<double> mult(0.0, 3.0);

    std::vector<Segment> segments;
    for (int i = 0; i < 1200; ++i) segments.push_back(support::random_segment(rng));

    for (std::size_t i = 0; i < segments.size(); ++i) {
        ScorerConfig cfg;
        cfg.wF = mult(rng); cfg.wE = mult(rng); cfg.wL = mult(rng);
        cfg.wV = mult(rng); cfg.wR = mult(rng); cfg.wM = mult(rng);
        cfg.profileTerms = {"amber", "fjord"};
        auto s = score_segment(segments[i], ctx, cfg, {});
        for (double factor : {s.f, s.e, s.l, s.v, s.r, s.m})
            if (factor < 0.0 || factor > 1.0) {
                why = "segment " + std::to_string(i) + ": factor out of range";
                return false;
            }
        double expected = s.f * cfg.wF + s.e * cfg.wE + s.l * cfg.wL +
                          s.v * cfg.wV + s.r * cfg.wR + s.m * cfg.wM;
        if (std::abs(s.total - expected) > 1e-9) {
            why = "segment " + std::to_string(i) + ": total not additive";
            return false;
        }
    }

    // Ordering invariance: scale every multiplier by the same constant.
    // Random segments produce near-equal totals where the last floating
    // point bit decides the sort, so the check is tolerance-aware: each
    // configuration's ranked permutation must also be a valid descending
    // order of the other's totals within 1e-9.
    auto totals_for = [&](const ScorerConfig& cfg) {
        std::vector<double> totals;
        for (const auto& seg : segments)
            totals.push_back(score_segment(seg, ctx, cfg, {}).total);
        return totals;
    };
    auto argsort = [](const std::vector<double>& totals) {
        std::vector<std::size_t> order(totals.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return totals[a] > totals[b];
                         });
        return order;
    };
    auto descends = [](const std::vector<std::size_t>& order,
                       const std::vector<double>& totals) {
        for (std::size_t r = 1; r < order.size(); ++r)
            if (totals[order[r - 1]] + 1e-9 < totals[order[r]]) return false;
        return true;
    };
    ScorerConfig base;
    auto base_totals = totals_for(base);
    auto base_order = argsort(base_totals);
    for (double c : {0.5, 2.0, 10.0}) {
        ScorerConfig scaled = base;
        scaled.wF *= c; scaled.wE *= c; scaled.wL *= c;
        scaled.wV *= c; scaled.wR *= c; scaled.wM *= c;
        auto scaled_totals = totals_for(scaled);
        // Normalize the scaled totals back so tolerances are comparable.
        for (double& t : scaled_totals) t /= c;
        auto scaled_order = argsort(scaled_totals);
        if (!descends(scaled_order, base_totals) ||
            !descends(base_order, scaled_totals)) {
            why = "ordering changed under uniform scale " + std::to_string(c);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------
// 6. Snippet contracts on fixtures plus fuzzed pages: rendered length
//    within budget, every fragment a verbatim substring of its source
//    segment, and semantic fragments confined to the top-ranked
//    segments (or the fallback head).
bool check_snippet_contracts(std::string& why) {
    auto inputs = fixture_pages();
    std::mt19937 rng(9090);
    for (int i = 0; i < 60; ++i) inputs.push_back(support::fuzz_html(rng));

    SnippetConfig cfg;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        Document doc;
        doc.rawHtml = inputs[i];
        auto page = segment_page(inputs[i]);
        auto ctx = make_page_context(page, doc, builtin_stopwords());
        auto scores = score_page(page, ctx, {}, builtin_stopwords());
        Query q;
        for (const auto& t : support::random_query(rng)) q.terms.push_back(t);

        auto semantic = build_semantic_snippet(page.segments, scores, q, cfg,
                                               builtin_stopwords());
        auto simple = build_simple_snippet(page.segments, q, cfg,
                                           builtin_stopwords());
        for (const auto* snip : {&semantic, &simple}) {
            if (snip->rendered.size() > cfg.budgetChars) {
                why = "input " + std::to_string(i) + ": rendered " +
                      std::to_string(snip->rendered.size()) + " > budget";
                return false;
            }
            for (const auto& frag : snip->fragments) {
                const auto& seg = page.segments[frag.segmentOrdinal];
                if (seg.text.substr(frag.span.start,
                                    frag.span.end - frag.span.start) !=
                    frag.text) {
                    why = "input " + std::to_string(i) +
                          ": fragment not a substring of its segment";
                    return false;
                }
            }
        }

        if (!semantic.fragments.empty()) {
            auto ranked = rank_segments(scores);
            std::set<std::size_t> allowed;
            for (std::size_t r = 0;
                 r < std::min(cfg.topSegments, ranked.order.size()); ++r)
                allowed.insert(ranked.order[r].first);
            for (const auto& [ord, total] : ranked.order)
                if (!page.segments[ord].text.empty()) {
                    allowed.insert(ord);  // fallback source
                    break;
                }
            for (const auto& frag : semantic.fragments)
                if (!allowed.count(frag.segmentOrdinal)) {
                    why = "input " + std::to_string(i) + ": fragment from " +
                          "segment " + std::to_string(frag.segmentOrdinal) +
                          " outside the top-ranked set";
                    return false;
                }
        }
    }
    return true;
}

// ---------------------------------------------------------------------
// 7. Descending-weight chain: for every scored fixture page the ranked
//    permutation must be pairwise non-increasing in total weight.
bool check_descending_chain(std::string& why) {
    auto inputs = fixture_pages();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        Document doc;
        doc.rawHtml = inputs[i];
        auto page = segment_page(inputs[i]);
        auto ctx = make_page_context(page, doc, builtin_stopwords());
        auto scores = score_page(page, ctx, {}, builtin_stopwords());
        auto ranked = rank_segments(scores);
        for (std::size_t r = 1; r < ranked.order.size(); ++r)
            if (ranked.order[r - 1].second < ranked.order[r].second) {
                why = "fixture " + std::to_string(i) + ": rank " +
                      std::to_string(r) + " outweighs its predecessor";
                return false;
            }
    }
    return true;
}

// ---------------------------------------------------------------------
// 8. End-to-end determinism: two complete CLI pipelines over the same
//    corpus must produce byte-identical index, search output, and
//    evaluation reports.
int run_cli(const std::string& args) {
    std::string cmd = std::string(SNIPFORGE_BIN) + " " + args;
    int status = std::system(cmd.c_str());
#ifdef _WIN32
    return status;
#else
    return WEXITSTATUS(status);
#endif
}

bool check_determinism(std::string& why) {
    auto corpus_dir = support::fixture_path("corpus10");
    auto root = fs::temp_directory_path() / "snipforge-acceptance-e2e";
    fs::remove_all(root);

    auto pipeline = [&](const std::string& run) -> bool {
        fs::path data = root / run;
        fs::create_directories(data);
        auto sessions = data / "sessions.json";
        std::ofstream(sessions)
            << R"([{"id":"s1","query":"segment evaluation"},)"
            << R"({"id":"s2","query":"freshness ranking"}])";
        std::string base = "--data-dir " + data.string() + " ";
        if (run_cli(base + "ingest " + corpus_dir + " > /dev/null")) return false;
        if (run_cli(base + "index > /dev/null")) return false;
        if (run_cli(base + "search \"segment evaluation\" --json > " +
                    (data / "search.json").string()))
            return false;
        if (run_cli(base + "eval --sessions " + sessions.string() + " --out " +
                    (data / "report").string() + " > /dev/null"))
            return false;
        return true;
    };
    if (!pipeline("a") || !pipeline("b")) {
        why = "pipeline run failed";
        return false;
    }
    for (const std::string rel : {"index.json", "search.json",
                                  "report/table1.csv", "report/summary.json",
                                  "report/items.jsonl"}) {
        auto a = support::read_file((root / "a" / rel).string());
        auto b = support::read_file((root / "b" / rel).string());
        if (a.empty()) {
            why = rel + " is empty";
            return false;
        }
        if (a != b) {
            why = rel + " differs between runs";
            return false;
        }
    }
    fs::remove_all(root);
    return true;
}

}  // namespace

int main() {
    const std::vector<Check> checks = {
        {"reference session counts reproduce means 3.4 and 8.2", 1.0,
         check_reference_means},
        {"semantic counts dominate simple counts on the synthetic corpus",
         30.0, check_dominance},
        {"retrieval matches the brute-force tf-idf oracle on 20 corpora",
         10.0, check_retrieval_oracle},
        {"segment spans tile the visible text on fixtures and 200 fuzzed pages",
         10.0, check_segmentation_coverage},
        {"scorer factors bounded, totals additive, ordering scale-invariant",
         10.0, check_scorer_invariants},
        {"snippets respect budget, provenance, and top-segment confinement",
         10.0, check_snippet_contracts},
        {"ranked segment weights descend pairwise on every fixture page",
         0.0, check_descending_chain},
        {"two full CLI pipelines produce byte-identical artifacts", 0.0,
         check_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        std::string why;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = checks[i].fn(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (ok && checks[i].time_limit_s > 0 &&
            elapsed > checks[i].time_limit_s) {
            ok = false;
            why = "overran time budget of " +
                  std::to_string(checks[i].time_limit_s) + " s";
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". "
             << checks[i].name << "  (" << elapsed << " s)";
        if (!ok && !why.empty()) line << "  -- " << why;
        std::cout << line.str() << "\n";
        if (!ok) ++failures;
    }
    if (failures) {
        std::cout << failures << " acceptance check(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance checks passed\n";
    return 0;
}
