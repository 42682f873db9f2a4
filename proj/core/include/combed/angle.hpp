#pragma once

#include <numbers>

namespace combed {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Maps theta onto [-pi, pi]. Values already in range are returned untouched
/// so that exact grid abscissae (and spike locations) survive the wrap.
double wrap_angle(double theta) noexcept;

/// Shortest distance between two angles on the circle, in [0, pi].
double circle_distance(double a, double b) noexcept;

}  // namespace combed
