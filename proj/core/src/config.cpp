// SPDX-License-Identifier: Apache-2.0
#include "mcradar/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mcradar/errors.hpp"

namespace mcradar {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(s.substr(start)));
            break;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string &key, const std::string &text) {
    const std::string t = trim(text);
    char *end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw config_error("key '" + key + "': not a number: '" + text + "'");
    return v;
}

} // namespace

Config Config::from_stream(std::istream &is) {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw config_error("line " + std::to_string(lineno) + ": empty key");
        cfg.entries_[key] = value;
    }
    return cfg;
}

Config Config::from_file(const std::string &path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open config file: " + path);
    return from_stream(is);
}

bool Config::has(const std::string &key) const { return entries_.count(key) > 0; }

void Config::set(const std::string &key, const std::string &value) { entries_[key] = value; }

std::string Config::get_string(const std::string &key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw config_error("missing config key: " + key);
    return it->second;
}

std::string Config::get_string_or(const std::string &key, const std::string &fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

int Config::get_int(const std::string &key) const {
    const double v = parse_double(key, get_string(key));
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw config_error("key '" + key + "': expected an integer");
    return i;
}

int Config::get_int_or(const std::string &key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_uint64_or(const std::string &key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string t = get_string(key);
    char *end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0')
        throw config_error("key '" + key + "': not an unsigned integer");
    return v;
}

double Config::get_double(const std::string &key) const {
    return parse_double(key, get_string(key));
}

double Config::get_double_or(const std::string &key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string &key) const {
    std::vector<double> out;
    for (const std::string &item : split(get_string(key), ','))
        out.push_back(parse_double(key, item));
    return out;
}

std::vector<cdouble> Config::get_complex_list(const std::string &key) const {
    std::vector<cdouble> out;
    for (const std::string &item : split(get_string(key), ',')) {
        std::istringstream ss(item);
        double re = 0.0, im = 0.0;
        if (!(ss >> re >> im))
            throw config_error("key '" + key + "': expected 're im' pairs, got '" + item + "'");
        out.emplace_back(re, im);
    }
    return out;
}

std::uint64_t Config::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const std::string &s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto &[key, value] : entries_) {
        feed(key);
        feed("=");
        feed(value);
        feed("\n");
    }
    return h;
}

ArrayGeometry geometry_from_config(const Config &cfg, const std::string &prefix) {
    const std::string kind = cfg.get_string_or(prefix + ".kind", "ula");
    const double wavelength = cfg.get_double("wavelength");
    const int count = cfg.get_int(prefix + ".count");
    if (kind == "ula") return make_ula(count, cfg.get_double(prefix + ".spacing"), wavelength);
    if (kind == "uca") return make_uca(count, cfg.get_double(prefix + ".radius"), wavelength);
    if (kind == "spiral")
        return make_spiral(count, cfg.get_double(prefix + ".turn_spacing"), wavelength,
                           cfg.get_double_or(prefix + ".phi_step", kDefaultSpiralStep));
    if (kind == "custom") {
        std::vector<Eigen::Vector2d> positions;
        for (const cdouble &p : cfg.get_complex_list(prefix + ".positions"))
            positions.emplace_back(p.real(), p.imag());
        if (static_cast<int>(positions.size()) != count)
            throw config_error(prefix + ".positions length does not match " + prefix + ".count");
        return make_custom(std::move(positions), wavelength);
    }
    throw config_error(prefix + ".kind must be one of ula, uca, spiral, custom");
}

TargetScene scene_from_config(const Config &cfg) {
    TargetScene scene;
    for (double deg : cfg.get_double_list("scene.angles_deg"))
        scene.angles.push_back(deg * kPi / 180.0);
    const std::size_t k = scene.angles.size();
    scene.reflections = cfg.has("scene.reflections")
                            ? cfg.get_complex_list("scene.reflections")
                            : std::vector<cdouble>(k, cdouble(1.0, 0.0));
    scene.speeds = cfg.has("scene.speeds") ? cfg.get_double_list("scene.speeds")
                                           : std::vector<double>(k, 0.0);
    scene.pulse_index = cfg.get_int_or("scene.pulse_index", 1);
    scene.pulse_repetition = cfg.get_double_or("scene.pulse_repetition", 1e-3);
    validate(scene);
    return scene;
}

} // namespace mcradar
