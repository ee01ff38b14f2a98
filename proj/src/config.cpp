#include "bsv/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bsv {

const std::vector<ConfigKeySpec>& config_schema() {
    static const std::vector<ConfigKeySpec> schema = {
        {"experiment.gamma", "0.33", "1", "parametric gain per mode pair"},
        {"experiment.m_pairs", "2000", "modes", "mode pairs accepted by the fixed aperture A2"},
        {"experiment.pulses", "20000", "pulses", "pulses per Stokes basis"},
        {"experiment.eta", "0.57", "1", "uniform channel transmission"},
        {"experiment.eta_ah", "-1", "1", "per-channel transmission override, -1 = use eta"},
        {"experiment.eta_av", "-1", "1", "per-channel transmission override, -1 = use eta"},
        {"experiment.eta_bh", "-1", "1", "per-channel transmission override, -1 = use eta"},
        {"experiment.eta_bv", "-1", "1", "per-channel transmission override, -1 = use eta"},
        {"experiment.pump_jitter", "0", "1", "relative std of the per-pulse gain"},
        {"experiment.electronic_noise", "300", "electrons", "readout noise per detector per pulse"},
        {"experiment.seed", "1", "1", "master RNG seed"},
        {"experiment.threads", "1", "threads", "worker threads; never changes results"},
        {"aperture.d1_mm", "7.02", "mm", "aperture A1 diameter"},
        {"aperture.d2_mm", "8.9", "mm", "aperture A2 diameter"},
        {"aperture.lambda_a_nm", "635", "nm", "beam A wavelength"},
        {"aperture.lambda_b_nm", "805", "nm", "beam B wavelength"},
        {"aperture.sweep_min_mm", "3", "mm", "aperture sweep start"},
        {"aperture.sweep_max_mm", "12", "mm", "aperture sweep end"},
        {"aperture.sweep_points", "13", "1", "aperture sweep point count"},
        {"plate.thickness_um", "170", "um", "quartz plate thickness"},
        {"phase.points", "41", "1", "phase grid size over [0, 2 pi]"},
        {"phase.path_offset_mm", "0", "mm", "arm length offset during the phase scan"},
        {"pathlength.sweep_max_mm", "6", "mm", "path sweep half-range"},
        {"pathlength.sweep_points", "25", "1", "path sweep point count"},
        {"efficiency.sweep_min", "0.05", "1", "efficiency sweep start"},
        {"efficiency.sweep_max", "0.95", "1", "efficiency sweep end"},
        {"efficiency.sweep_points", "19", "1", "efficiency sweep point count"},
        {"calibrate.levels", "1e4,3e4,1e5,3e5,1e6", "photons", "shot-noise source levels per pulse"},
    };
    return schema;
}

KeyValueConfig::KeyValueConfig() {
    for (const auto& spec : config_schema()) values_[spec.key] = spec.default_value;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str(), path);
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text, const std::string& origin) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
        if (cfg.values_.find(key) == cfg.values_.end())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) != 0; }

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    if (values_.find(key) == values_.end()) throw ConfigError("unknown key '" + key + "'");
    values_[key] = value;
}

const std::string& KeyValueConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
    return it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
    const std::string& s = get_string(key);
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: '" + s + "'");
    }
}

long long KeyValueConfig::get_int(const std::string& key) const {
    const double v = get_double(key);
    const long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v) throw ConfigError("key '" + key + "': not an integer");
    return i;
}

uint64_t KeyValueConfig::get_u64(const std::string& key) const {
    const std::string& s = get_string(key);
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not an unsigned integer: '" + s + "'");
    }
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
    const std::string& s = get_string(key);
    std::vector<double> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': bad list element '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::string RunManifest::header() const {
    std::string h;
    h += "# subcommand: " + subcommand + "\n";
    h += "# artifact_version: " + version + "\n";
    for (const auto& [k, v] : entries) h += "# " + k + ": " + v + "\n";
    return h;
}

RunManifest RunManifest::make(const std::string& subcommand, const KeyValueConfig& config) {
    RunManifest m;
    m.subcommand = subcommand;
    m.version = kArtifactVersion;
    m.seed = config.get_u64("experiment.seed");
    for (const auto& spec : config_schema()) {
        // Worker-thread count is an execution detail with no effect on any
        // emitted number; keeping it out makes manifests rerun-comparable.
        if (std::string(spec.key) == "experiment.threads") continue;
        m.entries.emplace_back(spec.key, config.get_string(spec.key));
    }
    return m;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

TableWriter::TableWriter(const std::string& path, const RunManifest& manifest,
                         const std::vector<std::string>& columns)
    : path_(path), n_columns_(columns.size()) {
    buffer_ = manifest.header();
    for (size_t i = 0; i < columns.size(); ++i) {
        buffer_ += columns[i];
        buffer_ += (i + 1 < columns.size()) ? "," : "\n";
    }
}

void TableWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_) throw std::invalid_argument("TableWriter: wrong cell count");
    for (size_t i = 0; i < cells.size(); ++i) {
        buffer_ += cells[i];
        buffer_ += (i + 1 < cells.size()) ? "," : "\n";
    }
}

void TableWriter::close() {
    if (closed_) return;
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path_);
    out << buffer_;
    closed_ = true;
}

TableWriter::~TableWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; close() explicitly to observe errors
    }
}

ParsedTable read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table: " + path);
    ParsedTable t;
    std::string line;
    bool header_done = false;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string item;
        std::istringstream ss(s);
        while (std::getline(ss, item, ',')) out.push_back(item);
        return out;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) throw std::runtime_error("bad manifest line: " + line);
            std::string key = line.substr(1, colon - 1);
            std::string value = line.substr(colon + 1);
            const auto strip = [](std::string& s) {
                while (!s.empty() && (s.front() == ' ')) s.erase(s.begin());
                while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
            };
            strip(key);
            strip(value);
            t.manifest[key] = value;
            continue;
        }
        if (!header_done) {
            t.columns = split(line);
            header_done = true;
        } else {
            t.rows.push_back(split(line));
        }
    }
    if (!header_done) throw std::runtime_error("table has no column header: " + path);
    return t;
}

} // namespace bsv
