#include "nobleent/species.hpp"

#include <cmath>
#include <fmt/format.h>

#include "nobleent/error.hpp"
#include "nobleent/units.hpp"

namespace nobleent {

namespace {

// Electron gyromagnetic ratio g_s mu_B / hbar; a fully polarized alkali
// precesses at this rate divided by [I] = 2I + 1.
constexpr double electron_gyro = 1.76085963023e7;  // rad s^-1 G^-1

// Vapor pressure: Alcock, Itkin & Horrigan (1984), as tabulated in the CRC
// handbook. D1 wavelengths and oscillator strengths: NIST ASD / Steck.
const AlkaliSpecies potassium{
    .name = AlkaliName::K,
    .nuclear_spin = 1.5,
    .oscillator_strength = 0.333,
    .gyromagnetic_ratio = electron_gyro / 4.0,
    .d1_wavelength = units::nm_to_cm(770.108),
    .vapor = {.solid_a = 4.961, .solid_b = -4646.0, .liquid_a = 4.402, .liquid_b = -4453.0,
              .melting_point = 336.53},
};

const AlkaliSpecies rubidium87{
    .name = AlkaliName::Rb87,
    .nuclear_spin = 1.5,
    .oscillator_strength = 0.342,
    .gyromagnetic_ratio = electron_gyro / 4.0,
    .d1_wavelength = units::nm_to_cm(794.979),
    .vapor = {.solid_a = 4.857, .solid_b = -4215.0, .liquid_a = 4.312, .liquid_b = -4040.0,
              .melting_point = 312.46},
};

// |gamma| / 2pi: 3He 3.2434 kHz/G, 129Xe 1.1777 kHz/G.
const NobleSpecies helium3{.name = NobleName::He3, .gyromagnetic_ratio = 2.037894569e4};
const NobleSpecies xenon129{.name = NobleName::Xe129, .gyromagnetic_ratio = 7.39980e3};

}  // namespace

std::string_view to_string(AlkaliName name) {
  switch (name) {
    case AlkaliName::K: return "K";
    case AlkaliName::Rb87: return "Rb87";
  }
  return "?";
}

std::string_view to_string(NobleName name) {
  switch (name) {
    case NobleName::He3: return "He3";
    case NobleName::Xe129: return "Xe129";
  }
  return "?";
}

AlkaliName parse_alkali_name(std::string_view text) {
  for (auto name : all_alkali_names) {
    if (to_string(name) == text) return name;
  }
  throw UnsupportedPair(fmt::format("unknown alkali species '{}'", text));
}

NobleName parse_noble_name(std::string_view text) {
  for (auto name : all_noble_names) {
    if (to_string(name) == text) return name;
  }
  throw UnsupportedPair(fmt::format("unknown noble-gas species '{}'", text));
}

double VaporPressureModel::pressure_atm(double kelvin) const {
  const bool liquid = kelvin >= melting_point;
  const double a = liquid ? liquid_a : solid_a;
  const double b = liquid ? liquid_b : solid_b;
  return std::pow(10.0, a + b / kelvin);
}

const AlkaliSpecies& alkali_species(AlkaliName name) {
  return name == AlkaliName::K ? potassium : rubidium87;
}

const NobleSpecies& noble_species(NobleName name) {
  return name == NobleName::He3 ? helium3 : xenon129;
}

ExchangePair lookup_pair(AlkaliName alkali, NobleName noble) {
  if (alkali == AlkaliName::K && noble == NobleName::He3) {
    return {alkali_species(alkali), noble_species(noble), 4.9e-15};
  }
  if (alkali == AlkaliName::Rb87 && noble == NobleName::Xe129) {
    return {alkali_species(alkali), noble_species(noble), 1.9e-13};
  }
  throw UnsupportedPair(
      fmt::format("unsupported pair ({}, {})", to_string(alkali), to_string(noble)));
}

ExchangePair lookup_pair(std::string_view alkali, std::string_view noble) {
  return lookup_pair(parse_alkali_name(alkali), parse_noble_name(noble));
}

double alkali_density(const AlkaliSpecies& species, double kelvin) {
  if (!(kelvin >= min_vapor_temperature && kelvin <= max_vapor_temperature)) {
    throw OutOfRangeTemperature(fmt::format("temperature {} K outside [{}, {}] K", kelvin,
                                            min_vapor_temperature, max_vapor_temperature));
  }
  const double pressure = species.vapor.pressure_atm(kelvin) * units::dyn_per_cm2_per_atm;
  return pressure / (units::boltzmann * kelvin);
}

double photon_number(double power_w, double duration_s, double wavelength_cm) {
  const double energy = power_w * units::joule_in_erg * duration_s;
  return energy * wavelength_cm / (units::planck * units::speed_of_light);
}

}  // namespace nobleent
