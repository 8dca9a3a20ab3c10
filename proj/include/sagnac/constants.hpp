#pragma once

// CODATA 2018 values, SI units.
namespace sagnac::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double boltzmann = 1.380649e-23;     // J/K

}  // namespace sagnac::constants
