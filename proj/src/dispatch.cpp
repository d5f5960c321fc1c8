#include "nobleent/dispatch.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <json.hpp>
#include <ostream>

#include "nobleent/config.hpp"
#include "nobleent/error.hpp"
#include "nobleent/lifetime.hpp"
#include "nobleent/output.hpp"
#include "nobleent/rotating_frame.hpp"
#include "nobleent/stochastic.hpp"
#include "nobleent/sweep.hpp"

#ifndef NOBLEENT_VERSION
#define NOBLEENT_VERSION "0.0.0"
#endif

namespace nobleent {

namespace {

namespace fs = std::filesystem;

void diagnostic(std::ostream& err, const std::string& level, const std::string& code,
                const std::string& message, const std::string& field = {}) {
  nlohmann::ordered_json d;
  d["level"] = level;
  d["code"] = code;
  if (!field.empty()) d["field"] = field;
  d["message"] = message;
  err << d.dump() << '\n';
}

struct Options {
  std::string config;
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  std::size_t samples = 100000;
  double dt = 0.0;  // 0: subcommand default
  bool allow_regime_violation = false;
  std::string electron_radius = "physical";

  // channel given directly
  double kappa = 2.0, epsilon = 0.3, eta = 0.125, rho = 0.162;
  double map_eta = 0.12;

  // map
  std::string grid;
  std::string x_axis = "kappa_eff", y_axis = "rho";
  std::string x_scale = "linear", y_scale = "log";
  bool refine = false;

  // adiabatic
  double gamma_a = 1.0, exchange = 1.0, delta_min = 50.0, delta_max = 500.0, t_final = 6.0;
  std::size_t points = 7;

  // lifetime
  std::vector<double> initial_db{1, 3, 5, 7, 10};
  double gamma_b = 0.0;  // 0: from config or 1
  double t_max = 0.0;    // 0: 2 / Gamma_b
  std::size_t steps = 201;
  bool lifetime_mc = false;
};

class Run {
public:
  Run(const std::string& subcommand, const Options& o, std::ostream& out)
      : name_(subcommand), o_(o), out_(out) {
    manifest_.version = NOBLEENT_VERSION;
    manifest_.subcommand = subcommand;
    manifest_.timestamp_utc = utc_timestamp();
  }

  bool has_config() const { return !o_.config.empty(); }

  DerivedParams derived() {
    if (!has_config()) throw ValidationError("config", "this subcommand needs -c/--config");
    const PhysicalConfig c = parse_config(resolve_config_path(o_.config));
    manifest_.config_digest = config_digest(c);
    DeriveOptions options;
    options.allow_regime_violation = o_.allow_regime_violation;
    if (o_.electron_radius == "as_printed") {
      options.electron_radius = ElectronRadius::as_printed;
    } else if (o_.electron_radius != "physical") {
      throw ValidationError("electron_radius", "must be physical or as_printed");
    }
    DerivedParams d = derive(c, options);
    for (const auto& w : d.warnings) manifest_.warnings.push_back(w);
    return d;
  }

  ChannelSpec channel() {
    if (has_config()) {
      const DerivedParams d = derived();
      return {d.kappa, d.epsilon, std::min(d.eta, 1.0), d.rho};
    }
    return {o_.kappa, o_.epsilon, o_.eta, o_.rho};
  }

  void stage(const std::string& file, std::string content) {
    staged_.emplace_back(file, std::move(content));
  }

  void use_seed() { manifest_.seed = o_.seed; }

  // Writes everything only after the subcommand has fully succeeded.
  void commit(std::ostream& err) {
    const fs::path dir(o_.out_dir);
    for (const auto& [file, content] : staged_) {
      write_file_atomic(dir / file, content);
      manifest_.artifacts.push_back(file);
    }
    write_file_atomic(dir / "manifest.json", manifest_.to_json());
    for (const auto& w : manifest_.warnings) diagnostic(err, "warning", "RegimeOverride", w);
  }

  const Options& options() const { return o_; }
  std::ostream& out() { return out_; }

private:
  std::string name_;
  const Options& o_;
  std::ostream& out_;
  RunManifest manifest_;
  std::vector<std::pair<std::string, std::string>> staged_;
};

void run_derive(Run& run) {
  const DerivedParams d = run.derived();
  const auto rows = report(d);
  for (const auto& [k, v] : rows) run.out() << k << '=' << format_double(v) << '\n';
  run.stage("derived.csv", key_value_csv(rows));
}

void run_squeeze(Run& run) {
  const ChannelSpec spec = run.channel();
  const SqueezeResult s = squeezing_parameter(spec);
  const std::vector<std::pair<std::string, double>> rows{
      {"kappa", spec.kappa},   {"epsilon", spec.epsilon},
      {"eta", spec.eta},       {"rho", spec.rho},
      {"xi", s.xi},            {"var_out", s.var_out},
      {"db", s.squeezing_db},  {"gain", s.gain},
      {"epr_value", s.epr_value}, {"entangled", s.entangled ? 1.0 : 0.0}};
  for (const auto& [k, v] : rows) run.out() << k << '=' << format_double(v) << '\n';
  run.stage("squeeze.csv", key_value_csv(rows));
}

Axis parse_axis(const std::string& text, AxisName name, AxisScale scale, const char* field) {
  Axis axis;
  axis.name = name;
  axis.scale = scale;
  double steps = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &axis.min, &axis.max, &steps) != 3 ||
      steps != std::floor(steps) || steps < 0) {
    throw ValidationError(field, fmt::format("expected MIN:MAX:STEPS, got '{}'", text));
  }
  axis.steps = static_cast<std::size_t>(steps);
  return axis;
}

AxisScale parse_scale(const std::string& text, const char* field) {
  if (text == "linear") return AxisScale::linear;
  if (text == "log") return AxisScale::log;
  throw ValidationError(field, "must be linear or log");
}

void run_map(Run& run) {
  const Options& o = run.options();
  SweepGrid grid = SweepGrid::standard(o.map_eta);
  grid.fixed = {o.kappa, o.epsilon, o.map_eta, o.rho};
  grid.x.name = parse_axis_name(o.x_axis);
  grid.y.name = parse_axis_name(o.y_axis);
  grid.x.scale = parse_scale(o.x_scale, "grid.x.scale");
  grid.y.scale = parse_scale(o.y_scale, "grid.y.scale");
  if (!o.grid.empty()) {
    const auto comma = o.grid.find(',');
    if (comma == std::string::npos) {
      throw ValidationError("grid", "expected XMIN:XMAX:STEPS,YMIN:YMAX:STEPS");
    }
    grid.x = parse_axis(o.grid.substr(0, comma), grid.x.name, grid.x.scale, "grid.x");
    grid.y = parse_axis(o.grid.substr(comma + 1), grid.y.name, grid.y.scale, "grid.y");
  }
  const SweepResult r = squeezing_map(grid);
  run.stage("map.csv", map_csv(r));
  run.stage("map_linear.csv", map_linear_csv(r));
  run.out() << fmt::format("nodes={} x={} y={}\n", r.db.size(), to_string(grid.x.name),
                           to_string(grid.y.name));
  if (o.refine) {
    const ArgMax best = refine_argmax(r);
    run.out() << fmt::format("argmax {}={} {}={} db={}\n", to_string(grid.x.name),
                             format_double(best.x), to_string(grid.y.name), format_double(best.y),
                             format_double(best.db));
    run.stage("argmax.csv", key_value_csv({{to_string(grid.x.name).data(), best.x},
                                           {to_string(grid.y.name).data(), best.y},
                                           {"db", best.db}}));
  }
}

void run_mc(Run& run) {
  const Options& o = run.options();
  const ChannelSpec spec = run.channel();
  McSettings settings;
  settings.n_samples = o.samples;
  settings.seed = o.seed;
  run.use_seed();
  const TrajectoryStats stats = sample_io(spec, settings);
  const Moments& m = stats.at("p_b_feedback");
  const double expected = post_feedback_variance(spec);
  run.out() << fmt::format("p_b_feedback variance={} stderr={} closed_form={} z={}\n",
                           format_double(m.variance), format_double(m.stderr_variance),
                           format_double(expected),
                           format_double((m.variance - expected) / m.stderr_variance));
  run.stage("mc.csv", mc_csv(stats));
}

void run_adiabatic(Run& run) {
  const Options& o = run.options();
  if (!(o.delta_min > 0.0 && o.delta_max > o.delta_min) || o.points < 2) {
    throw ValidationError("delta", "need 0 < delta_min < delta_max and points >= 2");
  }
  LangevinModel base;
  base.gamma_a = o.gamma_a;
  base.j = o.exchange;
  std::vector<double> deltas;
  for (std::size_t i = 0; i < o.points; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(o.points - 1);
    deltas.push_back(o.delta_min * std::pow(o.delta_max / o.delta_min, u));
  }
  const AdiabaticScan scan = adiabatic_scan(base, deltas, o.t_final, 3.0 / o.gamma_a);
  std::string csv = "delta,deviation\n";
  for (const auto& p : scan.points) {
    csv += fmt::format("{},{}\n", format_double(p.delta), format_double(p.deviation));
  }
  run.stage("adiabatic.csv", csv);
  run.out() << fmt::format("slope={}\n", format_double(scan.slope));

  if (run.has_config()) {
    const DerivedParams d = run.derived();
    const LangevinModel m = LangevinModel::from(d);
    double dt = o.dt;
    if (dt <= 0.0) {
      dt = 1.0 / (20.0 * std::max(std::abs(m.delta), std::abs(m.omega_b)));
    }
    const KappaCheck k = kappa_from_trajectories(m, dt);
    LangevinModel same = m;
    same.opposite_cells = false;
    const SelfRotation opposite = self_rotation_response(m, dt);
    const SelfRotation control = self_rotation_response(same, dt);
    const std::vector<std::pair<std::string, double>> rows{
        {"dt", dt},
        {"x_l", k.x_l},
        {"envelope", k.envelope},
        {"kappa_effective", k.kappa_effective},
        {"kappa", k.kappa},
        {"kappa_relative_error", k.relative_error},
        {"self_rotation_opposite", opposite.response},
        {"self_rotation_same", control.response}};
    for (const auto& [key, v] : rows) run.out() << key << '=' << format_double(v) << '\n';
    run.stage("trajectory_checks.csv", key_value_csv(rows));
  }
}

void run_lifetime(Run& run) {
  const Options& o = run.options();
  double gamma_b = o.gamma_b;
  if (gamma_b <= 0.0) gamma_b = run.has_config() ? run.derived().gamma_b_total : 1.0;
  const double t_max = o.t_max > 0.0 ? o.t_max : 2.0 / gamma_b;
  const auto curves = lifetime_curves(o.initial_db, gamma_b, t_max, o.steps);
  run.stage("series.csv", series_csv(curves));
  run.out() << fmt::format("gamma_b={} t_max={} curves={}\n", format_double(gamma_b),
                           format_double(t_max), curves.size());

  if (o.lifetime_mc) {
    McSettings settings;
    settings.n_samples = o.samples;
    settings.seed = o.seed;
    settings.t_final = t_max;
    settings.dt = o.dt > 0.0 ? o.dt : 1e-3 / gamma_b;
    run.use_seed();
    std::string csv = "t_seconds,mean,variance,stderr_variance,initial_db\n";
    for (double db : o.initial_db) {
      const auto samples = lifetime_mc(db_to_variance(db), gamma_b, settings,
                                       t_max / static_cast<double>(o.steps - 1));
      for (const auto& s : samples) {
        csv += fmt::format("{},{},{},{},{}\n", format_double(s.t), format_double(s.moments.mean),
                           format_double(s.moments.variance),
                           format_double(s.moments.stderr_variance), format_double(db));
      }
    }
    run.stage("lifetime_mc.csv", csv);
  }
}

void run_points(Run& run) {
  const auto rows = working_points();
  for (const auto& p : rows) {
    run.out() << fmt::format("{} xi={} db={} quoted={} abs_dev={}\n", p.label,
                             format_double(p.xi_computed), format_double(p.db_computed),
                             format_double(p.xi_quoted), format_double(p.abs_dev));
  }
  run.stage("points.csv", points_csv(rows));
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("-c,--config", o.config, "Config file or shipped config name");
  sub->add_option("-o,--out", o.out_dir, "Output directory")->capture_default_str();
  sub->add_flag("--allow-regime-violation", o.allow_regime_violation,
                "Downgrade regime-guard failures to warnings");
  sub->add_option("--electron-radius", o.electron_radius, "physical or as_printed")
      ->capture_default_str();
}

void add_channel(CLI::App* sub, Options& o, double& eta) {
  sub->add_option("--kappa", o.kappa)->capture_default_str();
  sub->add_option("--epsilon", o.epsilon)->capture_default_str();
  sub->add_option("--eta", eta)->capture_default_str();
  sub->add_option("--rho", o.rho)->capture_default_str();
}

void add_stochastic(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed)->capture_default_str();
  sub->add_option("--samples", o.samples)->capture_default_str();
  sub->add_option("--dt", o.dt, "Time step, s");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Measurement-induced entanglement of noble-gas spins", "nobleent"};
  app.set_version_flag("--version", NOBLEENT_VERSION);
  app.require_subcommand(1);

  auto* derive_cmd = app.add_subcommand("derive", "Derive dimensionless parameters from a config");
  add_common(derive_cmd, o);

  auto* squeeze_cmd = app.add_subcommand("squeeze", "Squeezing at one channel spec");
  add_common(squeeze_cmd, o);
  add_channel(squeeze_cmd, o, o.eta);

  auto* map_cmd = app.add_subcommand("map", "Squeezing map over a parameter grid");
  add_common(map_cmd, o);
  add_channel(map_cmd, o, o.map_eta);
  map_cmd->add_option("--grid", o.grid, "XMIN:XMAX:STEPS,YMIN:YMAX:STEPS");
  map_cmd->add_option("--x-axis", o.x_axis)->capture_default_str();
  map_cmd->add_option("--y-axis", o.y_axis)->capture_default_str();
  map_cmd->add_option("--x-scale", o.x_scale)->capture_default_str();
  map_cmd->add_option("--y-scale", o.y_scale)->capture_default_str();
  map_cmd->add_flag("--refine", o.refine, "Report the refined argmax");

  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo sampling of the noisy input-output relations");
  add_common(mc_cmd, o);
  add_channel(mc_cmd, o, o.eta);
  add_stochastic(mc_cmd, o);

  auto* adiabatic_cmd = app.add_subcommand("adiabatic", "Full versus adiabatically eliminated dynamics");
  add_common(adiabatic_cmd, o);
  add_stochastic(adiabatic_cmd, o);
  adiabatic_cmd->add_option("--gamma-a", o.gamma_a)->capture_default_str();
  adiabatic_cmd->add_option("--j", o.exchange)->capture_default_str();
  adiabatic_cmd->add_option("--delta-min", o.delta_min)->capture_default_str();
  adiabatic_cmd->add_option("--delta-max", o.delta_max)->capture_default_str();
  adiabatic_cmd->add_option("--points", o.points)->capture_default_str();
  adiabatic_cmd->add_option("--t-final", o.t_final)->capture_default_str();

  auto* lifetime_cmd = app.add_subcommand("lifetime", "Decay of squeezing toward vacuum");
  add_common(lifetime_cmd, o);
  add_stochastic(lifetime_cmd, o);
  lifetime_cmd->add_option("--initial-db", o.initial_db)->delimiter(',')->capture_default_str();
  lifetime_cmd->add_option("--gamma-b", o.gamma_b, "s^-1 (default: config Gamma_b, else 1)");
  lifetime_cmd->add_option("--t-max", o.t_max, "s (default 2 / Gamma_b)");
  lifetime_cmd->add_option("--steps", o.steps)->capture_default_str();
  lifetime_cmd->add_flag("--mc", o.lifetime_mc, "Also run Ornstein-Uhlenbeck Monte-Carlo paths");

  auto* points_cmd = app.add_subcommand("points", "Working-point table");
  add_common(points_cmd, o);

  std::vector<const char*> argv{"nobleent"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << NOBLEENT_VERSION << '\n';
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    diagnostic(err, "error", "UsageError", e.what());
    return exit_input_error;
  }

  const CLI::App* sub = app.get_subcommands().front();
  Run run(sub->get_name(), o, out);
  try {
    if (sub == derive_cmd) run_derive(run);
    else if (sub == squeeze_cmd) run_squeeze(run);
    else if (sub == map_cmd) run_map(run);
    else if (sub == mc_cmd) run_mc(run);
    else if (sub == adiabatic_cmd) run_adiabatic(run);
    else if (sub == lifetime_cmd) run_lifetime(run);
    else if (sub == points_cmd) run_points(run);
    run.commit(err);
  } catch (const ValidationError& e) {
    diagnostic(err, "error", e.code(), e.what(), e.field());
    return exit_input_error;
  } catch (const Error& e) {
    diagnostic(err, "error", e.code(), e.what());
    return e.family() == Error::Family::numerical ? exit_numerical_error : exit_input_error;
  } catch (const std::exception& e) {
    diagnostic(err, "error", "IOError", e.what());
    return exit_input_error;
  }
  return exit_ok;
}

}  // namespace nobleent
