#pragma once

// Corpus layout: a directory of *.html files, file stem = document id,
// optional <stem>.meta sidecar ({"url": ..., "fetch_date": "YYYY-MM-DD"}).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "snipforge/dates.hpp"
#include "snipforge/errors.hpp"
#include "snipforge/segment.hpp"

namespace snipforge {

class Corpus {
  public:
    void add(Document doc) {
        if (by_id_.count(doc.id)) throw DuplicateDocumentError(doc.id);
        by_id_[doc.id] = docs_.size();
        docs_.push_back(std::move(doc));
    }

    const std::vector<Document>& documents() const { return docs_; }

    const Document& get(const std::string& id) const {
        auto it = by_id_.find(id);
        if (it == by_id_.end()) throw DataError("unknown document id: " + id);
        return docs_[it->second];
    }

    bool contains(const std::string& id) const { return by_id_.count(id) > 0; }
    std::size_t size() const { return docs_.size(); }

  private:
    std::vector<Document> docs_;
    std::map<std::string, std::size_t> by_id_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Loads every *.html in dir, sorted by filename for a stable document
// order.
inline Corpus load_corpus_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw DataError("corpus directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".html")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    Corpus corpus;
    for (const auto& file : files) {
        Document doc;
        doc.id = file.stem().string();
        doc.rawHtml = read_file(file);
        auto meta_path = file;
        meta_path.replace_extension(".meta");
        if (std::filesystem::exists(meta_path)) {
            nlohmann::json meta;
            try {
                std::ifstream in(meta_path);
                in >> meta;
            } catch (const nlohmann::json::exception& e) {
                throw DataError("malformed meta sidecar " + meta_path.string() +
                                ": " + e.what());
            }
            doc.url = meta.value("url", std::string());
            std::string fd = meta.value("fetch_date", std::string());
            if (!fd.empty()) {
                doc.fetchDate = parse_iso_date(fd);
                if (!doc.fetchDate)
                    throw DataError("bad fetch_date in " + meta_path.string());
            }
        }
        corpus.add(std::move(doc));
    }
    return corpus;
}

}  // namespace snipforge
