#pragma once

#include <cmath>

#include "flatkahler/common.hpp"

namespace flatkahler {

// Unit imaginary quaternion q = a i + b j + c k, a point of the twistor
// sphere.
struct TwistorPoint {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;

  double norm() const { return std::sqrt(a * a + b * b + c * c); }
  bool is_unit(double tolerance = tol::kNumeric) const { return std::abs(norm() - 1.0) <= tolerance; }
  TwistorPoint operator-() const { return {-a, -b, -c}; }
  double distance(const TwistorPoint& o) const {
    return std::sqrt((a - o.a) * (a - o.a) + (b - o.b) * (b - o.b) + (c - o.c) * (c - o.c));
  }
};

}  // namespace flatkahler
