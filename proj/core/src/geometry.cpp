// SPDX-License-Identifier: Apache-2.0
#include "mcradar/geometry.hpp"

#include <cmath>

#include "mcradar/errors.hpp"

namespace mcradar {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

const char *to_string(ArrayKind kind) {
    switch (kind) {
    case ArrayKind::Ula: return "ula";
    case ArrayKind::Uca: return "uca";
    case ArrayKind::Spiral: return "spiral";
    case ArrayKind::Custom: return "custom";
    }
    return "unknown";
}

void validate(const ArrayGeometry &geom) {
    if (geom.positions.empty())
        throw invalid_parameter_error("array needs at least one antenna");
    if (!(geom.wavelength > 0.0) || !std::isfinite(geom.wavelength))
        throw invalid_parameter_error("wavelength must be positive and finite");
    for (const auto &p : geom.positions)
        if (!p.allFinite()) throw invalid_parameter_error("antenna coordinates must be finite");
}

void validate(const TargetScene &scene) {
    const std::size_t k = scene.angles.size();
    if (k == 0) throw invalid_scene_error("scene needs at least one target");
    if (scene.reflections.size() != k || scene.speeds.size() != k)
        throw invalid_scene_error("angles, reflections and speeds must share one length");
    for (double a : scene.angles)
        if (!std::isfinite(a)) throw invalid_scene_error("target angles must be finite");
    for (const cdouble &z : scene.reflections)
        if (z == cdouble(0.0, 0.0)) throw invalid_scene_error("reflection coefficients must be nonzero");
    if (scene.pulse_index < 1) throw invalid_scene_error("pulse index must be >= 1");
    if (!(scene.pulse_repetition > 0.0))
        throw invalid_scene_error("pulse repetition interval must be positive");
}

ArrayGeometry make_ula(int num_antennas, double spacing, double wavelength) {
    if (num_antennas < 1) throw invalid_parameter_error("ULA needs at least one antenna");
    if (!(spacing > 0.0)) throw invalid_parameter_error("ULA spacing must be positive");
    if (!(wavelength > 0.0)) throw invalid_parameter_error("wavelength must be positive");
    ArrayGeometry geom;
    geom.kind = ArrayKind::Ula;
    geom.wavelength = wavelength;
    geom.positions.reserve(static_cast<std::size_t>(num_antennas));
    for (int l = 0; l < num_antennas; ++l)
        geom.positions.emplace_back(0.0, static_cast<double>(l) * spacing);
    return geom;
}

ArrayGeometry make_uca(int num_antennas, double radius, double wavelength) {
    if (num_antennas < 1) throw invalid_parameter_error("UCA needs at least one antenna");
    if (!(radius > 0.0)) throw invalid_parameter_error("UCA radius must be positive");
    if (!(wavelength > 0.0)) throw invalid_parameter_error("wavelength must be positive");
    ArrayGeometry geom;
    geom.kind = ArrayKind::Uca;
    geom.wavelength = wavelength;
    geom.positions.reserve(static_cast<std::size_t>(num_antennas));
    for (int l = 0; l < num_antennas; ++l) {
        const double phase = 2.0 * kPi * static_cast<double>(l - 1) / num_antennas;
        geom.positions.emplace_back(radius * std::cos(phase), radius * std::sin(phase));
    }
    return geom;
}

ArrayGeometry make_spiral(int num_antennas, double turn_spacing, double wavelength,
                          double phi_step) {
    if (num_antennas < 1) throw invalid_parameter_error("spiral needs at least one antenna");
    if (!(turn_spacing > 0.0)) throw invalid_parameter_error("spiral turn spacing must be positive");
    if (!(wavelength > 0.0)) throw invalid_parameter_error("wavelength must be positive");
    if (!(phi_step > 0.0)) throw invalid_parameter_error("spiral phi step must be positive");
    ArrayGeometry geom;
    geom.kind = ArrayKind::Spiral;
    geom.wavelength = wavelength;
    geom.positions.reserve(static_cast<std::size_t>(num_antennas));
    for (int l = 0; l < num_antennas; ++l) {
        const double phi = static_cast<double>(l) * phi_step;
        const double r = turn_spacing * phi;
        geom.positions.emplace_back(r * std::cos(phi), r * std::sin(phi));
    }
    return geom;
}

ArrayGeometry make_custom(std::vector<Eigen::Vector2d> positions, double wavelength) {
    ArrayGeometry geom;
    geom.kind = ArrayKind::Custom;
    geom.wavelength = wavelength;
    geom.positions = std::move(positions);
    validate(geom);
    return geom;
}

std::vector<Eigen::Vector2d> normalized_positions(const ArrayGeometry &geom) {
    validate(geom);
    std::vector<Eigen::Vector2d> out;
    out.reserve(geom.positions.size());
    for (const auto &p : geom.positions) out.push_back(p / geom.wavelength);
    return out;
}

} // namespace mcradar
