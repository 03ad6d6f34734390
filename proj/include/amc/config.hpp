#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "amc/horoball.hpp"
#include "amc/teich.hpp"

namespace amc {

struct Config {
    int base_b = 2;
    double epsilon0 = 0.25;
    long long K_threshold = 12;
    long long bfs_cap = 14;
    int d_cap_slack = 4;
    unsigned long long seed = 1;
    double metric_scale = 0.5;

    HoroParams horo() const { return HoroParams{base_b}; }
    TeichParams teich() const { return TeichParams{epsilon0, metric_scale}; }
};

inline void validate_config(const Config& c) {
    if (c.base_b < 2) throw std::invalid_argument("config: base_b must be >= 2");
    if (c.K_threshold <= 0 || c.bfs_cap <= 0 || c.d_cap_slack <= 0)
        throw std::invalid_argument("config: thresholds must be positive");
    validate_teich_params(c.teich());
}

/// Applies one key=value assignment; unknown keys are an error.
inline void config_set(Config& c, const std::string& key, const std::string& value) {
    try {
        if (key == "base_b") c.base_b = std::stoi(value);
        else if (key == "epsilon0") c.epsilon0 = std::stod(value);
        else if (key == "K_threshold") c.K_threshold = std::stoll(value);
        else if (key == "bfs_cap") c.bfs_cap = std::stoll(value);
        else if (key == "d_cap_slack") c.d_cap_slack = std::stoi(value);
        else if (key == "seed") c.seed = std::stoull(value);
        else if (key == "metric_scale") c.metric_scale = std::stod(value);
        else throw std::invalid_argument("config: unknown key " + key);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("config: bad value for " + key + ": " + value);
    }
}

/// Flat key=value file; blank lines and #-comments ignored.
inline Config load_config(std::istream& in, Config c = {}) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto l = line.find_first_not_of(" \t");
        if (l == std::string::npos || line[l] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": missing =");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        config_set(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate_config(c);
    return c;
}

inline Config load_config_file(const std::string& path, Config c = {}) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    return load_config(in, c);
}

/// Fixed 12-significant-digit float formatting used by every emitter.
inline std::string format_float(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

/// The resolved config as comment lines, embedded in experiment outputs.
inline std::string config_header(const Config& c, char comment = '#') {
    std::ostringstream os;
    os << comment << " base_b=" << c.base_b << '\n'
       << comment << " epsilon0=" << format_float(c.epsilon0) << '\n'
       << comment << " K_threshold=" << c.K_threshold << '\n'
       << comment << " bfs_cap=" << c.bfs_cap << '\n'
       << comment << " d_cap_slack=" << c.d_cap_slack << '\n'
       << comment << " seed=" << c.seed << '\n'
       << comment << " metric_scale=" << format_float(c.metric_scale) << '\n';
    return os.str();
}

}  // namespace amc
