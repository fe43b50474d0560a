#ifndef XDIPOLE_CONSTANTS_HPP
#define XDIPOLE_CONSTANTS_HPP

#include <numbers>

namespace xdipole {

inline constexpr double kPi = std::numbers::pi;

/// Speed of light in vacuum [m/s].
inline constexpr double kC0 = 299'792'458.0;

/// Vacuum permeability [H/m] (classical 4*pi*1e-7 definition).
inline constexpr double kMu0 = 4.0 * kPi * 1.0e-7;

/// Vacuum permittivity [F/m], derived so that mu0*eps0*c^2 == 1 exactly.
inline constexpr double kEps0 = 1.0 / (kMu0 * kC0 * kC0);

/// Free-space wave impedance [ohm].
inline constexpr double kEta0 = kMu0 * kC0;

}  // namespace xdipole

#endif  // XDIPOLE_CONSTANTS_HPP
