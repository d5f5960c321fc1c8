#pragma once

#include <array>
#include <string>
#include <string_view>

namespace nobleent {

enum class AlkaliName { K, Rb87 };
enum class NobleName { He3, Xe129 };

inline constexpr std::array<AlkaliName, 2> all_alkali_names{AlkaliName::K, AlkaliName::Rb87};
inline constexpr std::array<NobleName, 2> all_noble_names{NobleName::He3, NobleName::Xe129};

std::string_view to_string(AlkaliName name);
std::string_view to_string(NobleName name);
AlkaliName parse_alkali_name(std::string_view text);
NobleName parse_noble_name(std::string_view text);

/// Two-phase saturated vapor pressure correlation
/// log10(P / atm) = a + b / T, with separate (a, b) below and above melting.
struct VaporPressureModel {
  double solid_a;
  double solid_b;  // K
  double liquid_a;
  double liquid_b;  // K
  double melting_point;  // K

  double pressure_atm(double kelvin) const;
  bool operator==(const VaporPressureModel&) const = default;
};

struct AlkaliSpecies {
  AlkaliName name;
  double nuclear_spin;         // I
  double oscillator_strength;  // f, D1 line
  double gyromagnetic_ratio;   // g_a, rad s^-1 G^-1, fully polarized (F = I + 1/2)
  double d1_wavelength;        // cm
  VaporPressureModel vapor;

  bool operator==(const AlkaliSpecies&) const = default;
};

struct NobleSpecies {
  NobleName name;
  double gyromagnetic_ratio;  // g_b, rad s^-1 G^-1 (magnitude)
  static constexpr double spin = 0.5;

  bool operator==(const NobleSpecies&) const = default;
};

struct ExchangePair {
  AlkaliSpecies alkali;
  NobleSpecies noble;
  double exchange_coefficient;  // g, cm^3/s

  bool operator==(const ExchangePair&) const = default;
};

const AlkaliSpecies& alkali_species(AlkaliName name);
const NobleSpecies& noble_species(NobleName name);

/// Supported pairs are (K, He3) and (Rb87, Xe129); anything else throws UnsupportedPair.
ExchangePair lookup_pair(AlkaliName alkali, NobleName noble);
ExchangePair lookup_pair(std::string_view alkali, std::string_view noble);

inline constexpr double min_vapor_temperature = 300.0;  // K
inline constexpr double max_vapor_temperature = 700.0;  // K

/// Saturated vapor number density (cm^-3). Throws OutOfRangeTemperature outside 300-700 K.
double alkali_density(const AlkaliSpecies& species, double kelvin);

/// Photon number M_L = P T lambda / (h c) of a square pulse. `power_w` may be zero.
double photon_number(double power_w, double duration_s, double wavelength_cm);

}  // namespace nobleent
