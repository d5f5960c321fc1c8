#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nobleent/error.hpp"
#include "nobleent/params.hpp"
#include "support.hpp"

using namespace nobleent;

namespace {

PhysicalConfig unit_cell() {
  PhysicalConfig c = testing::headline_config();
  c.cell_area = 1.0;
  c.cell_length = 1.0;
  return c;
}

}  // namespace

TEST_CASE("magnetizations follow their definitions") {
  PhysicalConfig c = unit_cell();
  c.alkali_density_override = 10.0;
  c.noble_pressure_torr = units::density_to_torr(10.0, c.fill_temperature);
  c.noble_polarization = 1.0;
  c.pump.target_polarization = 0.5;
  const Magnetizations m = magnetizations(c);
  CHECK(m.alkali_atoms == doctest::Approx(10.0));
  CHECK(m.noble_atoms == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(m.m_b == doctest::Approx(5.0).epsilon(1e-12));
  // P_a N_a (I + 1/2) = 0.5 * 10 * 2; at P_a = 1 this would be 20.
  CHECK(m.m_a == doctest::Approx(10.0));
}

TEST_CASE("pump closure reproduces the target polarization") {
  PhysicalConfig c = testing::headline_config();
  const Magnetizations m = magnetizations(c);
  CHECK(m.pump_rate == doctest::Approx(0.62 * 667.0 / 0.38));
  CHECK(m.pump_rate / (m.pump_rate + c.spin_destruction_rate) == doctest::Approx(0.62).epsilon(1e-14));

  // R_op = 1.6 gamma_sd lands on 0.615, which rounds to the quoted 0.62.
  c.pump = {1.6 * c.spin_destruction_rate, std::nullopt};
  CHECK(magnetizations(c).alkali_polarization == doctest::Approx(0.615).epsilon(1e-3));
  c.pump = {1.1 * c.spin_destruction_rate, std::nullopt};
  CHECK(magnetizations(c).alkali_polarization == doctest::Approx(0.524).epsilon(1e-3));
}

TEST_CASE("coupling scaling laws") {
  const PhysicalConfig c = testing::headline_config();
  Magnetizations m = magnetizations(c);
  const Couplings base = coupling_rates(c, m);
  m.m_a *= 4.0;
  CHECK(coupling_rates(c, m).j == doctest::Approx(2.0 * base.j).epsilon(1e-14));
  m.m_b *= 4.0;
  CHECK(coupling_rates(c, m).j == doctest::Approx(4.0 * base.j).epsilon(1e-14));

  PhysicalConfig longer = c;
  longer.pulse_duration *= 2.0;
  const Couplings doubled = coupling_rates(longer, magnetizations(longer));
  CHECK(doubled.q / base.q == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));

  PhysicalConfig red = c;
  red.probe_detuning = -c.probe_detuning;
  CHECK(coupling_rates(red, magnetizations(red)).a < 0.0);
  CHECK(base.a > 0.0);
}

TEST_CASE("Gamma_b from direct substitution") {
  PhysicalConfig c = testing::headline_config();
  c.noble_relaxation_rate = 0.0;
  c.spin_destruction_rate = 0.5;
  Magnetizations m = magnetizations(c);
  m.pump_rate = 0.5;
  const Couplings k{1.0, 1.0, 0.1};
  std::vector<std::string> warnings;
  const Relaxation r = relaxation_and_dimensionless(c, m, k, 3.0, ElectronRadius::physical, true, &warnings);
  CHECK(r.gamma_a == doctest::Approx(1.0));
  CHECK(r.gamma_b_total == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(r.delta_omega_b == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(relaxation_and_dimensionless(c, m, k, 3.0, ElectronRadius::physical, false, nullptr),
                  OffResonanceViolation);

  // Dispersive limit.
  const Relaxation far = relaxation_and_dimensionless(c, m, k, 1e9, ElectronRadius::physical, false, nullptr);
  CHECK(far.gamma_b_total == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(far.psi < 1e-8);
  CHECK(std::abs(far.delta_omega_b) < 1e-8);
}

TEST_CASE("kappa grows as sqrt(T) at fixed power and Delta") {
  PhysicalConfig c = testing::headline_config();
  c.delta_override = 4e4;
  const double k1 = derive(c).kappa;
  c.pulse_duration *= 2.0;
  CHECK(derive(c).kappa / k1 == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("precession frequencies") {
  PhysicalConfig c = testing::headline_config();
  c.pump_light_shift = 0.0;
  const Precession bare = precession_frequencies(c, 0.0, 1.0, 1.0, 1);
  CHECK(bare.omega_a == doctest::Approx(c.pair.alkali.gyromagnetic_ratio * c.field_b1));
  CHECK(bare.omega_b == doctest::Approx(c.pair.noble.gyromagnetic_ratio * c.field_b1));

  const double j = 500.0, ma = 1e14, mb = 8e17;
  const Precession p1 = precession_frequencies(c, j, ma, mb, 1);
  const Precession p2 = precession_frequencies(c, j, ma, mb, 2);
  const FieldMatch f = field_matching(c, j, ma, mb);
  const double exchange_a1 = p1.omega_a - c.pair.alkali.gyromagnetic_ratio * c.field_b1;
  const double exchange_a2 = p2.omega_a - c.pair.alkali.gyromagnetic_ratio * f.b2 - f.pump_shift_difference;
  CHECK(exchange_a1 == doctest::Approx(j * std::sqrt(mb / ma)));
  CHECK(exchange_a2 == doctest::Approx(-j * std::sqrt(mb / ma)));
  CHECK_THROWS_AS(precession_frequencies(c, j, ma, mb, 3), ValidationError);
}

TEST_CASE("field matching") {
  const PhysicalConfig c = testing::headline_config();
  const FieldMatch none = field_matching(c, 0.0, 1e14, 1e17);
  CHECK(none.b2 == c.field_b1);
  CHECK(none.pump_shift_difference == 0.0);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    PhysicalConfig r = testing::random_config(rng);
    const double j = testing::log_uniform(rng, 1.0, 1e4);
    const double ma = testing::log_uniform(rng, 1e10, 1e16);
    const double mb = testing::log_uniform(rng, 1e14, 1e19);
    // Direct substitution into the bare frequency formulas, independent of precession_frequencies.
    const FieldMatch f = field_matching(r, j, ma, mb);
    const double ga = r.pair.alkali.gyromagnetic_ratio, gb = r.pair.noble.gyromagnetic_ratio;
    const double w1a = ga * r.field_b1 + r.pump_light_shift + j * std::sqrt(mb / ma);
    const double w2a = ga * f.b2 + r.pump_light_shift + f.pump_shift_difference - j * std::sqrt(mb / ma);
    const double w1b = gb * r.field_b1 + j * std::sqrt(ma / mb);
    const double w2b = gb * f.b2 - j * std::sqrt(ma / mb);
    CHECK(std::abs(w1a - w2a) <= 1e-12 * std::abs(w1a));
    CHECK(std::abs(w1b - w2b) <= 1e-12 * std::abs(w1b));
  }
}

TEST_CASE("headline pipeline regression") {
  const DerivedParams d = derive(testing::headline_config());
  CHECK(d.kappa == doctest::Approx(2.027993).epsilon(1e-5));
  CHECK(d.epsilon == doctest::Approx(0.299602).epsilon(1e-5));
  CHECK(d.eta == doctest::Approx(0.125435).epsilon(1e-5));
  CHECK(d.rho == doctest::Approx(0.162720).epsilon(1e-5));
  CHECK(d.optical_depth == doctest::Approx(348.1946).epsilon(1e-5));
  CHECK(d.delta > 0.0);
  CHECK(d.delta > 50.0 * d.j);
  CHECK(d.delta == doctest::Approx(38343.16).epsilon(1e-6));
  const double db = d.field_match.b2 - testing::headline_config().field_b1;
  CHECK(db > 0.0);
  CHECK(db < 0.1 * testing::headline_config().field_b1);
  CHECK(db == doctest::Approx(6.494924e-4).epsilon(1e-5));
  CHECK(d.warnings.empty());
}

TEST_CASE("optical-depth identity") {
  const DerivedParams d = derive(testing::headline_config());
  const OpticalDepthIdentity id = optical_depth_identity(d);
  CHECK(id.ratio > 0.0);
  CHECK(id.ratio <= 1.0);
  CHECK(id.ratio == doctest::Approx(id.correction).epsilon(1e-12));

  DerivedParams forced = assume_optical_depth_dominance(d);
  CHECK(std::abs(optical_depth_identity(forced).ratio - 1.0) < 1e-12);
  forced.gamma_b = 1e-2;
  refresh_dimensionless(forced);
  CHECK(optical_depth_identity(forced).ratio < 1.0);
}

TEST_CASE("two routes to kappa agree on random configs") {
  std::mt19937_64 rng(11);
  DeriveOptions options;
  options.allow_regime_violation = true;
  for (int i = 0; i < 300; ++i) {
    const DerivedParams d = derive(testing::random_config(rng), options);
    CHECK(kappa_via_optical_depth(d) == doctest::Approx(d.kappa).epsilon(1e-10));
    const OpticalDepthIdentity id = optical_depth_identity(d);
    CHECK(id.ratio == doctest::Approx(id.correction).epsilon(1e-10));
  }
}

TEST_CASE("derived invariants on random configs") {
  std::mt19937_64 rng(3);
  DeriveOptions options;
  options.allow_regime_violation = true;
  for (int i = 0; i < 1000; ++i) {
    const DerivedParams d = derive(testing::random_config(rng), options);
    CHECK(d.kappa > 0.0);
    CHECK(d.epsilon >= 0.0);
    if (d.epsilon > 1.0) {
      // 4 gamma_L L is a small-loss expression; the channel refuses it past unity.
      CHECK_THROWS_AS(squeezing_parameter({d.kappa, d.epsilon, d.eta, d.rho}), ValidationError);
    }
    CHECK(d.eta >= 0.0);
    CHECK(d.rho > 0.0);
    CHECK(d.p_a > 0.0);
    CHECK(d.p_a < 1.0);
    CHECK(d.delta > 0.0);
    CHECK(d.psi > 0.0);
    CHECK(d.psi < std::numbers::pi / 2.0);
    CHECK(d.gamma_b_total >= d.gamma_b);
    const double kappa = d.j * d.q * d.pulse_duration / std::sqrt(d.delta * d.delta + d.gamma_a * d.gamma_a);
    CHECK(std::abs(kappa - d.kappa) <= 1e-12 * d.kappa);
  }
}

TEST_CASE("monotonicity in probe power and alkali density") {
  PhysicalConfig c = testing::headline_config();
  double previous = 0.0;
  for (double mw = 50.0; mw <= 800.0; mw += 50.0) {
    c.probe_power = mw * 1e-3;
    const double k = derive(c).kappa;
    CHECK(k > previous);
    previous = k;
  }
  c = testing::headline_config();
  previous = 0.0;
  for (double n = 2e14; n <= 1.6e15; n += 1e14) {
    c.alkali_density_override = n;
    const double eps = derive(c, {true, ElectronRadius::physical}).epsilon;
    CHECK(eps > previous);
    previous = eps;
  }
}

TEST_CASE("regime guards") {
  PhysicalConfig c = testing::headline_config();
  c.probe_detuning = 5.0 * c.excited_linewidth;
  CHECK_THROWS_AS(derive(c), DispersiveRegimeViolation);
  const DerivedParams allowed = derive(c, {true, ElectronRadius::physical});
  CHECK(!allowed.warnings.empty());

  c = testing::headline_config();
  c.delta_override = 2000.0;
  CHECK_THROWS_AS(derive(c), OffResonanceViolation);
  CHECK(derive(c, {true, ElectronRadius::physical}).warnings.size() == 1);
}

TEST_CASE("validation names the offending field") {
  PhysicalConfig c = testing::headline_config();
  c.noble_polarization = 1.2;
  try {
    validate(c);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "cell.noble_polarization");
  }
  c = testing::headline_config();
  c.alkali_q_factor = 0.9;
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = testing::headline_config();
  c.pump = {};
  CHECK_THROWS_AS(validate(c), ValidationError);
}

TEST_CASE("printed electron radius scales kappa and epsilon linearly") {
  const PhysicalConfig c = testing::headline_config();
  const DerivedParams phys = derive(c);
  PhysicalConfig fixed = c;
  fixed.delta_override = phys.delta;
  const DerivedParams printed = derive(fixed, {true, ElectronRadius::as_printed});
  const double ratio = units::electron_radius_as_printed / units::electron_radius;
  CHECK(printed.kappa / phys.kappa == doctest::Approx(ratio).epsilon(1e-12));
  CHECK(printed.epsilon / phys.epsilon == doctest::Approx(ratio).epsilon(1e-12));
}
