// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>
#include <Eigen/Dense>

#include "mcradar/types.hpp"

namespace mcradar {

enum class ArrayKind { Ula, Uca, Spiral, Custom };

const char *to_string(ArrayKind kind);

/// Planar antenna array: 2D element coordinates in meters plus the carrier
/// wavelength. Immutable after construction; constructors validate.
struct ArrayGeometry {
    ArrayKind kind = ArrayKind::Custom;
    std::vector<Eigen::Vector2d> positions; // meters
    double wavelength = 0.0;                // meters

    int size() const { return static_cast<int>(positions.size()); }
};

/// Far-field target scene: angles in radians, complex reflection
/// coefficients, radial speeds in m/s, plus the pulse index q >= 1 and the
/// pulse repetition interval in seconds.
struct TargetScene {
    std::vector<double> angles;
    std::vector<cdouble> reflections;
    std::vector<double> speeds;
    int pulse_index = 1;
    double pulse_repetition = 1e-3;

    int target_count() const { return static_cast<int>(angles.size()); }
};

// Linear array along the y axis: element l sits at (0, l * spacing).
ArrayGeometry make_ula(int num_antennas, double spacing, double wavelength);

// Circular array of radius R; element l sits at angle 2*pi*(l-1)/M.
ArrayGeometry make_uca(int num_antennas, double radius, double wavelength);

// Archimedean spiral r = a*phi sampled at phi_l = l * phi_step. Experimental
// layout; phi_step defaults to 2*pi/5.
inline constexpr double kDefaultSpiralStep = 2.0 * 3.141592653589793238462643383279502884 / 5.0;
ArrayGeometry make_spiral(int num_antennas, double turn_spacing, double wavelength,
                          double phi_step = kDefaultSpiralStep);

ArrayGeometry make_custom(std::vector<Eigen::Vector2d> positions, double wavelength);

// Dimensionless element coordinates r(l) = positions[l] / wavelength.
std::vector<Eigen::Vector2d> normalized_positions(const ArrayGeometry &geom);

// Throws invalid_parameter_error / invalid_scene_error on violated invariants.
void validate(const ArrayGeometry &geom);
void validate(const TargetScene &scene);

} // namespace mcradar
