#include "metaplan/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "metaplan/io.hpp"

namespace metaplan {

namespace {

double parse_value(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = first + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || value.empty()) {
        throw std::invalid_argument("config key '" + key +
                                    "' needs a numeric value, got '" + value +
                                    "'");
    }
    if (!std::isfinite(out)) {
        throw std::invalid_argument("config key '" + key +
                                    "' must be finite, got '" + value + "'");
    }
    return out;
}

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = text.find_last_not_of(" \t");
    return text.substr(first, last - first + 1);
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "delta",      "alpha",      "sigma_init_sq", "omega",
        "pi0",        "bf_limit",   "bfdr_level",    "evidence_source",
        "gamma_sq",   "n_ref"};
    return keys;
}

void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value) {
    if (key == "delta") {
        cfg.criteria.delta = parse_value(key, value);
    } else if (key == "alpha") {
        cfg.criteria.alpha = parse_value(key, value);
    } else if (key == "sigma_init_sq") {
        cfg.criteria.sigma_init_sq = parse_value(key, value);
    } else if (key == "omega") {
        cfg.criteria.omega = parse_value(key, value);
    } else if (key == "pi0") {
        cfg.criteria.pi0 = parse_value(key, value);
    } else if (key == "bf_limit") {
        cfg.criteria.bf_limit = parse_value(key, value);
    } else if (key == "bfdr_level") {
        cfg.criteria.bfdr_level = parse_value(key, value);
    } else if (key == "evidence_source") {
        cfg.evidence_source = evidence_source_from_string(value);
    } else if (key == "gamma_sq") {
        cfg.gamma_sq = parse_value(key, value);
    } else if (key == "n_ref") {
        cfg.n_ref = parse_value(key, value);
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

void load_config(std::istream& in, const std::string& name, RunConfig& cfg) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(name, lineno,
                             "expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ParseError(name, lineno, "missing key before '='");
        }
        try {
            apply_config_key(cfg, key, value);
        } catch (const std::invalid_argument& e) {
            throw ParseError(name, lineno, e.what());
        } catch (const std::domain_error& e) {
            throw ParseError(name, lineno, e.what());
        }
    }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    load_config(in, path, cfg);
}

}  // namespace metaplan
