// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcradar/geometry.hpp"
#include "mcradar/types.hpp"

namespace mcradar {

/// Flat "key = value" configuration. Lines starting with '#' are comments.
/// Lists are comma separated; complex values are "re im" pairs.
class Config {
  public:
    Config() = default;

    static Config from_stream(std::istream &is);
    static Config from_file(const std::string &path);

    bool has(const std::string &key) const;
    void set(const std::string &key, const std::string &value);

    // Typed getters throw config_error on missing keys or malformed values;
    // the *_or variants substitute a default when the key is absent.
    std::string get_string(const std::string &key) const;
    std::string get_string_or(const std::string &key, const std::string &fallback) const;
    int get_int(const std::string &key) const;
    int get_int_or(const std::string &key, int fallback) const;
    std::uint64_t get_uint64_or(const std::string &key, std::uint64_t fallback) const;
    double get_double(const std::string &key) const;
    double get_double_or(const std::string &key, double fallback) const;
    std::vector<double> get_double_list(const std::string &key) const;
    std::vector<cdouble> get_complex_list(const std::string &key) const;

    // FNV-1a over the sorted key=value pairs; recorded in CSV artifacts.
    std::uint64_t hash() const;

    const std::map<std::string, std::string> &entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

// Builds the array described by keys "<prefix>.kind", "<prefix>.count" and
// the kind-specific size key, with the shared "wavelength".
ArrayGeometry geometry_from_config(const Config &cfg, const std::string &prefix);

// Builds the scene from "scene.angles_deg" (degrees; radians everywhere
// else), "scene.reflections", "scene.speeds", "scene.pulse_index",
// "scene.pulse_repetition". Reflections default to unity, speeds to zero.
TargetScene scene_from_config(const Config &cfg);

} // namespace mcradar
