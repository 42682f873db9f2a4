#include "combed/angle.hpp"

#include <cmath>

namespace combed {

double wrap_angle(double theta) noexcept {
  if (theta >= -pi && theta <= pi) return theta;
  double r = std::remainder(theta, two_pi);
  if (r < -pi) r += two_pi;
  if (r > pi) r -= two_pi;
  return r;
}

double circle_distance(double a, double b) noexcept {
  return std::abs(std::remainder(a - b, two_pi));
}

}  // namespace combed
