#ifndef TFCOP_UNIT_VALUE_HPP
#define TFCOP_UNIT_VALUE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace tfcop {

// Tolerance for roundoff excursions outside [0,1] that we silently repair.
inline constexpr double kUnitTol = 1e-12;

// Clamp a probability-scale value to [0,1]. Values farther than kUnitTol
// outside the interval are treated as caller bugs, not roundoff.
inline double clamp_unit(double v) {
    if (std::isnan(v) || v < -kUnitTol || v > 1.0 + kUnitTol)
        throw std::domain_error("unit value out of range: " + std::to_string(v));
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

// A value known to lie on the probability scale.
class UnitValue {
  public:
    UnitValue(double v) : v_(clamp_unit(v)) {}
    operator double() const noexcept { return v_; }
    double get() const noexcept { return v_; }

  private:
    double v_;
};

} // namespace tfcop

#endif
