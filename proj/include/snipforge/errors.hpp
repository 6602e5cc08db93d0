#pragma once

#include <stdexcept>
#include <string>

namespace snipforge {

// Bad input data: corrupt index files, duplicate ids, malformed corpora.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateDocumentError : DataError {
    explicit DuplicateDocumentError(const std::string& id)
        : DataError("duplicate document id: " + id) {}
};

struct IndexLoadError : DataError {
    using DataError::DataError;
};

// Bad configuration: unknown keys, out-of-bounds values.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace snipforge
