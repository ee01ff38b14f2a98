#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bsv/errors.hpp"

namespace bsv {

// One configuration key: flat `key = value` lines grouped under [section]
// headers; the resolved name is "section.key".
struct ConfigKeySpec {
    const char* key;
    const char* default_value;
    const char* unit;
    const char* description;
};

// Every key the artifact understands, with defaults and units. Help text
// and manifests are generated from this table.
const std::vector<ConfigKeySpec>& config_schema();

class KeyValueConfig {
public:
    KeyValueConfig(); // all defaults

    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    const std::string& get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    uint64_t get_u64(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;

    // Resolved key/value pairs in schema order.
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

struct RunManifest {
    std::string subcommand;
    std::string version;
    uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> entries;

    // "# key: value" header block; identical input yields identical bytes.
    std::string header() const;

    static RunManifest make(const std::string& subcommand, const KeyValueConfig& config);
};

// Shortest round-trip decimal formatting (std::to_chars); locale-free.
std::string format_double(double v);

// CSV table with a manifest comment header.
class TableWriter {
public:
    TableWriter(const std::string& path, const RunManifest& manifest,
                const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void close();
    ~TableWriter();

private:
    std::string path_;
    std::string buffer_;
    size_t n_columns_;
    bool closed_ = false;
};

// Re-parse of an emitted table: manifest entries, column names, rows.
struct ParsedTable {
    std::map<std::string, std::string> manifest;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

ParsedTable read_table(const std::string& path);

inline constexpr const char* kArtifactVersion = "0.1.0";

} // namespace bsv
