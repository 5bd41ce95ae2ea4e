#pragma once

namespace lymphax::units {

inline constexpr double cmH2O = 98.0665;          // Pa
inline constexpr double micrometre = 1e-6;        // m
inline constexpr double millimetre = 1e-3;        // m
inline constexpr double per_minute = 1.0 / 60.0;  // s^-1
inline constexpr double nanolitre = 1e-12;        // m^3
inline constexpr double microlitre = 1e-9;        // m^3
inline constexpr double hour = 3600.0;            // s
inline constexpr double dyne_per_cm2 = 0.1;       // Pa
inline constexpr double microlitre_per_hour = microlitre / hour;

}  // namespace lymphax::units
