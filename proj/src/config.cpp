#include "nobleent/config.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "nobleent/error.hpp"
#include "nobleent/units.hpp"

#ifndef NOBLEENT_CONFIG_DIR
#define NOBLEENT_CONFIG_DIR "configs"
#endif

namespace nobleent {

using json = nlohmann::json;

namespace {

struct UnitKey {
  const char* key;
  std::function<double(double)> to_internal;
};

double identity(double x) { return x; }

// One section of the document; tracks which keys were consumed so leftovers
// can be reported.
class Section {
public:
  Section(const json& doc, std::string name) : name_(std::move(name)) {
    if (!doc.contains(name_)) throw ParseError(fmt::format("missing section '{}'", name_));
    node_ = &doc.at(name_);
    if (!node_->is_object()) throw ParseError(fmt::format("section '{}' must be an object", name_));
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

  std::optional<double> number(const std::string& key) {
    used_.insert(key);
    if (!node_->contains(key)) return std::nullopt;
    const json& v = node_->at(key);
    if (!v.is_number()) throw ParseError(fmt::format("{} must be a number", path(key)));
    return v.get<double>();
  }

  std::string text(const std::string& key) {
    used_.insert(key);
    if (!node_->contains(key)) throw ParseError(fmt::format("missing key {}", path(key)));
    const json& v = node_->at(key);
    if (!v.is_string()) throw ParseError(fmt::format("{} must be a string", path(key)));
    return v.get<std::string>();
  }

  const json* raw(const std::string& key) {
    used_.insert(key);
    return node_->contains(key) ? &node_->at(key) : nullptr;
  }

  /// Exactly one (or, if optional, at most one) of the unit variants.
  std::optional<double> quantity(const std::string& field, std::initializer_list<UnitKey> keys,
                                 bool required = true) {
    std::optional<double> out;
    std::string found;
    for (const auto& k : keys) {
      if (auto v = number(k.key)) {
        if (out) {
          throw ParseError(fmt::format("{} given twice ({} and {})", path(field), path(found),
                                       path(k.key)));
        }
        out = k.to_internal(*v);
        found = k.key;
      }
    }
    if (!out && required) {
      std::string names;
      for (const auto& k : keys) names += (names.empty() ? "" : " | ") + path(k.key);
      throw ParseError(fmt::format("missing {} (one of {})", path(field), names));
    }
    return out;
  }

  void reject_unknown() const {
    std::string unknown;
    for (const auto& [key, value] : node_->items()) {
      if (!used_.count(key)) unknown += (unknown.empty() ? "" : ", ") + path(key);
    }
    if (!unknown.empty()) throw ParseError(fmt::format("unknown key(s): {}", unknown));
  }

private:
  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> used_;
};

const std::set<std::string> sections{"species", "cell", "probe", "pump", "rates", "field"};

}  // namespace

PhysicalConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("malformed JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw ParseError("top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!sections.count(key)) throw ParseError(fmt::format("unknown key(s): {}", key));
  }

  PhysicalConfig c{};

  Section species(doc, "species");
  c.pair = lookup_pair(species.text("alkali"), species.text("noble"));
  species.reject_unknown();

  Section cell(doc, "cell");
  c.cell_length = *cell.quantity("length", {{"length_cm", identity}, {"length_mm", [](double v) { return v / 10.0; }}});
  c.cell_area = *cell.quantity("area", {{"area_cm2", identity}, {"area_mm2", units::mm2_to_cm2}});
  c.temperature = *cell.quantity(
      "temperature", {{"temperature_k", identity}, {"temperature_c", units::celsius_to_kelvin}});
  c.noble_pressure_torr = *cell.quantity("noble_pressure", {{"noble_pressure_torr", identity}});
  if (const json* gases = cell.raw("buffer_gases")) {
    if (!gases->is_array()) throw ParseError("cell.buffer_gases must be an array");
    for (const auto& g : *gases) {
      if (!g.is_object() || !g.contains("name") || !g.contains("pressure_torr") || g.size() != 2 ||
          !g.at("name").is_string() || !g.at("pressure_torr").is_number()) {
        throw ParseError("cell.buffer_gases entries must be {\"name\": str, \"pressure_torr\": number}");
      }
      c.buffer_gases.push_back({g.at("name").get<std::string>(), g.at("pressure_torr").get<double>()});
    }
  }
  c.alkali_density_override = cell.quantity("alkali_density", {{"alkali_density_cm3", identity}}, false);
  c.fill_temperature = cell.quantity("fill_temperature",
                                     {{"fill_temperature_k", identity},
                                      {"fill_temperature_c", units::celsius_to_kelvin}},
                                     false)
                           .value_or(units::default_fill_temperature);
  c.noble_polarization = *cell.quantity("noble_polarization", {{"noble_polarization", identity}});
  cell.reject_unknown();

  Section probe(doc, "probe");
  c.probe_power = *probe.quantity("power", {{"power_w", identity}, {"power_mw", units::milliwatt_to_watt}});
  c.probe_detuning =
      *probe.quantity("detuning", {{"detuning_hz", identity}, {"detuning_ghz", units::ghz_to_hz}});
  c.excited_linewidth =
      *probe.quantity("linewidth", {{"linewidth_hz", identity}, {"linewidth_ghz", units::ghz_to_hz}});
  c.pulse_duration = *probe.quantity(
      "pulse_duration", {{"pulse_duration_s", identity}, {"pulse_duration_ms", [](double v) { return v * 1e-3; }}});
  probe.reject_unknown();

  Section pump(doc, "pump");
  c.pump.rate = pump.quantity("rate", {{"rate_per_s", identity}}, false);
  c.pump.target_polarization = pump.quantity("alkali_polarization", {{"alkali_polarization", identity}}, false);
  c.alkali_q_factor = *pump.quantity("q_factor", {{"q_factor", identity}});
  c.pump_light_shift = pump.quantity("light_shift",
                                     {{"light_shift_rad_s", identity},
                                      {"light_shift_hz", units::hz_to_rad_per_s}},
                                     false)
                           .value_or(0.0);
  pump.reject_unknown();

  Section rates(doc, "rates");
  c.spin_destruction_rate = *rates.quantity("spin_destruction", {{"spin_destruction_per_s", identity}});
  c.noble_relaxation_rate = *rates.quantity(
      "noble_relaxation", {{"noble_relaxation_per_s", identity},
                           {"noble_t1_hours", [](double h) { return 1.0 / (h * 3600.0); }}});
  rates.reject_unknown();

  Section field(doc, "field");
  c.field_b1 = *field.quantity("b1", {{"b1_g", identity}, {"b1_mg", units::milligauss_to_gauss}});
  c.delta_override = field.quantity("delta_override", {{"delta_override_rad_s", identity}}, false);
  field.reject_unknown();

  validate(c);
  return c;
}

PhysicalConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot open config '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const PhysicalConfig& c) {
  json doc;
  doc["species"] = {{"alkali", std::string(to_string(c.pair.alkali.name))},
                    {"noble", std::string(to_string(c.pair.noble.name))}};

  json cell = {{"length_cm", c.cell_length},
               {"area_cm2", c.cell_area},
               {"temperature_k", c.temperature},
               {"noble_pressure_torr", c.noble_pressure_torr},
               {"fill_temperature_k", c.fill_temperature},
               {"noble_polarization", c.noble_polarization}};
  json gases = json::array();
  for (const auto& g : c.buffer_gases) gases.push_back({{"name", g.name}, {"pressure_torr", g.pressure_torr}});
  cell["buffer_gases"] = gases;
  if (c.alkali_density_override) cell["alkali_density_cm3"] = *c.alkali_density_override;
  doc["cell"] = cell;

  doc["probe"] = {{"power_w", c.probe_power},
                  {"detuning_hz", c.probe_detuning},
                  {"linewidth_hz", c.excited_linewidth},
                  {"pulse_duration_s", c.pulse_duration}};

  json pump = {{"q_factor", c.alkali_q_factor}, {"light_shift_rad_s", c.pump_light_shift}};
  if (c.pump.rate) pump["rate_per_s"] = *c.pump.rate;
  if (c.pump.target_polarization) pump["alkali_polarization"] = *c.pump.target_polarization;
  doc["pump"] = pump;

  doc["rates"] = {{"spin_destruction_per_s", c.spin_destruction_rate},
                  {"noble_relaxation_per_s", c.noble_relaxation_rate}};

  json field = {{"b1_g", c.field_b1}};
  if (c.delta_override) field["delta_override_rad_s"] = *c.delta_override;
  doc["field"] = field;
  return doc.dump(2);
}

std::string config_digest(const PhysicalConfig& config) {
  const std::string text = serialize_config(config);
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), hash, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", hash[i]);
  return hex;
}

std::filesystem::path resolve_config_path(const std::string& name) {
  const std::filesystem::path direct(name);
  if (std::filesystem::is_regular_file(direct)) return direct;
  const std::filesystem::path shipped(NOBLEENT_CONFIG_DIR);
  for (const auto& candidate : {shipped / name, shipped / (name + ".json")}) {
    if (std::filesystem::is_regular_file(candidate)) return candidate;
  }
  throw ParseError(fmt::format("config '{}' not found (also looked in {})", name, shipped.string()));
}

}  // namespace nobleent
