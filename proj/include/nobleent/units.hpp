#pragma once

// Physical constants and unit conversions. The internal unit system is
// cgs-Gaussian: cm, s, Gauss, erg. Angular rates are rad/s; optical
// detunings and linewidths are cyclic frequencies (Hz).

#include <numbers>

namespace nobleent::units {

inline constexpr double pi = std::numbers::pi;

inline constexpr double boltzmann = 1.380649e-16;        // erg/K
inline constexpr double planck = 6.62607015e-27;         // erg s
inline constexpr double speed_of_light = 2.99792458e10;  // cm/s

/// CODATA 2018 classical electron radius, cm.
inline constexpr double electron_radius = 2.8179403262e-13;
/// Value as printed in the source material (off by 1e4); selectable for comparison only.
inline constexpr double electron_radius_as_printed = 2.8e-17;

inline constexpr double dyn_per_cm2_per_torr = 101325.0 * 10.0 / 760.0;
inline constexpr double dyn_per_cm2_per_atm = 1.01325e6;
inline constexpr double joule_in_erg = 1.0e7;

inline constexpr double celsius_zero = 273.15;
inline constexpr double default_fill_temperature = 293.15;  // K

constexpr double celsius_to_kelvin(double c) { return c + celsius_zero; }
constexpr double kelvin_to_celsius(double k) { return k - celsius_zero; }

constexpr double nm_to_cm(double nm) { return nm * 1.0e-7; }
constexpr double cm_to_nm(double cm) { return cm * 1.0e7; }
constexpr double mm2_to_cm2(double mm2) { return mm2 * 1.0e-2; }

constexpr double milligauss_to_gauss(double mg) { return mg * 1.0e-3; }
constexpr double milliwatt_to_watt(double mw) { return mw * 1.0e-3; }
constexpr double ghz_to_hz(double ghz) { return ghz * 1.0e9; }
constexpr double hz_to_rad_per_s(double hz) { return 2.0 * pi * hz; }

/// Ideal-gas number density (cm^-3) of a gas at pressure `torr` and temperature `kelvin`.
constexpr double torr_to_density(double torr, double kelvin) {
  return torr * dyn_per_cm2_per_torr / (boltzmann * kelvin);
}

constexpr double density_to_torr(double density, double kelvin) {
  return density * boltzmann * kelvin / dyn_per_cm2_per_torr;
}

/// Larmor rate (rad/s) of a spin with gyromagnetic ratio `gyro` (rad s^-1 G^-1) in field `gauss`.
constexpr double gauss_to_rad_per_s(double gauss, double gyro) { return gauss * gyro; }
constexpr double rad_per_s_to_gauss(double rate, double gyro) { return rate / gyro; }

}  // namespace nobleent::units
