#pragma once
#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsr/experiment.hpp"

namespace hsr {

// Config-file problem with enough context to point at the offending line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, std::string key, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + (key.empty() ? "" : ", key '" + key + "'") + ": " +
                             message),
          line_(line),
          key_(std::move(key)) {}

    std::size_t line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

inline std::uint64_t parse_uint(const std::string& value, std::size_t line, const std::string& key) {
    try {
        std::size_t pos = 0;
        if (value.empty() || value[0] == '-') throw std::invalid_argument("negative");
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(line, key, "expected a non-negative integer, got '" + value + "'");
    }
}

inline double parse_real(const std::string& value, std::size_t line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(line, key, "expected a real number, got '" + value + "'");
    }
}

inline bool parse_bool(const std::string& value, std::size_t line, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(line, key, "expected true/false, got '" + value + "'");
}

inline Method parse_method(const std::string& value, std::size_t line, const std::string& key) {
    if (value == "erm" || value == "ERM") return Method::Erm;
    if (value == "vbr" || value == "VBR") return Method::Vbr;
    if (value == "hsr" || value == "HSR") return Method::Hsr;
    throw ConfigError(line, key, "unknown method '" + value + "' (expected erm, vbr, hsr)");
}

}  // namespace detail

/**
 * Applies `key = value` lines from a stream onto a config. Blank lines and
 * lines starting with '#' are ignored; keys are the ExperimentConfig field
 * names. Range validation happens in ExperimentConfig::validate(), not here,
 * so command-line overrides can still repair a value.
 */
inline void apply_config_stream(std::istream& in, ExperimentConfig& config) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "", "expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");

        if (key == "K") {
            config.K = detail::parse_uint(value, line_no, key);
        } else if (key == "B") {
            config.B = detail::parse_real(value, line_no, key);
        } else if (key == "delta") {
            config.delta = detail::parse_real(value, line_no, key);
        } else if (key == "n_values") {
            config.n_values.clear();
            for (const auto& item : detail::split_list(value))
                config.n_values.push_back(detail::parse_uint(item, line_no, key));
            if (config.n_values.empty()) throw ConfigError(line_no, key, "expected at least one sample size");
        } else if (key == "trials") {
            config.trials = detail::parse_uint(value, line_no, key);
        } else if (key == "master_seed") {
            config.master_seed = detail::parse_uint(value, line_no, key);
        } else if (key == "methods") {
            config.methods.clear();
            for (const auto& item : detail::split_list(value))
                config.methods.push_back(detail::parse_method(item, line_no, key));
            if (config.methods.empty()) throw ConfigError(line_no, key, "expected at least one method");
        } else if (key == "diagnostics") {
            config.diagnostics = detail::parse_bool(value, line_no, key);
        } else if (key == "reuse_prefix") {
            config.reuse_prefix = detail::parse_bool(value, line_no, key);
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else {
            throw ConfigError(line_no, key, "unknown key");
        }
    }
}

inline ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    ExperimentConfig config;
    apply_config_stream(in, config);
    return config;
}

}  // namespace hsr
