#include "waveshell/config.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "waveshell/errors.hpp"

namespace waveshell {

namespace {

struct SectionSchema {
    const char* name;
    std::vector<const char*> keys;
};

const std::array<SectionSchema, 8>& schema() {
    static const std::array<SectionSchema, 8> s = {{
        {"geometry", {"m", "n", "period", "grid"}},
        {"data",
         {"kind", "c_star", "width", "ball_center", "ball_radius", "strip_dir", "strip_halfwidth",
          "envelope_sigma", "distribution", "seed"}},
        {"time", {"t0", "t1", "nt"}},
        {"experiment", {"p", "q", "r", "N_list", "trials", "statistic"}},
        {"measure", {"c_star", "T_list", "mc_samples", "slice_resolution", "trials", "seed"}},
        {"weyl", {"K_list", "d", "p"}},
        {"output", {"out_dir"}},
        {"run", {}},  // manifest metadata; any key accepted
    }};
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void Config::check_schema(const std::string& section, const std::string& key,
                          const std::string& origin) {
    for (const auto& sec : schema()) {
        if (section != sec.name) continue;
        if (key.empty() || section == "run") return;
        for (const char* k : sec.keys)
            if (key == k) return;
        throw ConfigError(origin + ": unknown key '" + key + "' in section [" + section + "]");
    }
    throw ConfigError(origin + ": unknown section [" + section + "]");
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            check_schema(section, "", origin);  // section existence only
            if (!cfg.sections_.count(section)) cfg.sections_[section] = {};
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value, got '" + t + "'");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        check_schema(section, key, origin);
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end() || !s->second.count(key))
        throw ConfigError("missing required key '" + key + "' in section [" + section + "]");
    return s->second.at(key);
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' in [" + section + "] is not a number: '" + v + "'");
    }
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long long Config::get_int(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' in [" + section + "] is not an integer: '" + v + "'");
    }
}

long long Config::get_int(const std::string& section, const std::string& key, long long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key,
                              std::uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key);
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' in [" + section + "] is not an unsigned integer: '" + v + "'");
    }
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    std::vector<double> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(t, &pos));
            if (pos != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "' in [" + section + "] has a non-numeric entry: '" + t + "'");
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "' in [" + section + "] is an empty list");
    return out;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) const {
    return has(section, key) ? get_list(section, key) : fallback;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    check_schema(section, key, "<set>");
    sections_[section][key] = value;
}

void Config::set_double(const std::string& section, const std::string& key, double value) {
    set(section, key, format_double(value));
}

void Config::set_int(const std::string& section, const std::string& key, long long value) {
    set(section, key, std::to_string(value));
}

void Config::set_u64(const std::string& section, const std::string& key, std::uint64_t value) {
    set(section, key, std::to_string(value));
}

void Config::set_list(const std::string& section, const std::string& key,
                      const std::vector<double>& values) {
    std::string v;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) v += ",";
        v += format_double(values[i]);
    }
    set(section, key, v);
}

void Config::merge(const Config& other) {
    for (const auto& [sec, kv] : other.sections_)
        for (const auto& [k, v] : kv) sections_[sec][k] = v;
}

std::string Config::serialize() const {
    std::ostringstream out;
    for (const auto& sec : schema()) {
        const auto it = sections_.find(sec.name);
        if (it == sections_.end() || it->second.empty()) continue;
        out << "[" << sec.name << "]\n";
        for (const auto& [k, v] : it->second) out << k << "=" << v << "\n";
    }
    return out.str();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace waveshell
