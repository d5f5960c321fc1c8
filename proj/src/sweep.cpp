#include "nobleent/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "nobleent/error.hpp"
#include "nobleent/statistics.hpp"

namespace nobleent {

std::string_view to_string(AxisName name) {
  switch (name) {
    case AxisName::kappa_eff: return "kappa_eff";
    case AxisName::rho: return "rho";
    case AxisName::eta: return "eta";
    case AxisName::kappa: return "kappa";
    case AxisName::epsilon: return "epsilon";
  }
  return "?";
}

AxisName parse_axis_name(std::string_view text) {
  if (text == "kappa_eff" || text == "sigma_b/sigma_L") return AxisName::kappa_eff;
  if (text == "rho" || text == "sigma_a/sigma_b") return AxisName::rho;
  if (text == "eta") return AxisName::eta;
  if (text == "kappa") return AxisName::kappa;
  if (text == "epsilon") return AxisName::epsilon;
  throw ValidationError("grid.axis", fmt::format("unknown axis name '{}'", text));
}

void Axis::validate(std::string_view field) const {
  if (steps < 2) throw ValidationError(std::string(field), "steps must be >= 2");
  if (!(min < max)) {
    throw ValidationError(std::string(field), fmt::format("min {} must be below max {}", min, max));
  }
  if (scale == AxisScale::log && !(min > 0.0)) {
    throw ValidationError(std::string(field), "log-spaced axis needs min > 0");
  }
}

std::vector<double> Axis::values() const {
  std::vector<double> v(steps);
  const double last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double u = static_cast<double>(i) / last;
    v[i] = scale == AxisScale::linear ? min + (max - min) * u
                                      : std::exp(std::log(min) + (std::log(max) - std::log(min)) * u);
  }
  // Pin the endpoints exactly.
  v.front() = min;
  v.back() = max;
  return v;
}

void SweepGrid::validate() const {
  x.validate("grid.x");
  y.validate("grid.y");
  if (x.name == y.name) throw ValidationError("grid", "x and y axes must differ");
  fixed.validate();
  if ((x.name == AxisName::kappa_eff || y.name == AxisName::kappa_eff) &&
      (x.name == AxisName::kappa || y.name == AxisName::kappa)) {
    throw ValidationError("grid", "kappa and kappa_eff cannot both be swept");
  }
}

SweepGrid SweepGrid::standard(double eta) {
  SweepGrid g;
  g.x = {AxisName::kappa_eff, 0.0, 5.0, 101, AxisScale::linear};
  g.y = {AxisName::rho, 1e-3, 1.0, 101, AxisScale::log};
  g.fixed = {0.0, 0.3, eta, 0.0};
  return g;
}

ChannelSpec SweepGrid::spec_at(double x_value, double y_value) const {
  ChannelSpec s = fixed;
  double kappa_eff = -1.0;
  for (auto [name, value] : {std::pair{x.name, x_value}, std::pair{y.name, y_value}}) {
    switch (name) {
      case AxisName::kappa_eff: kappa_eff = value; break;
      case AxisName::rho: s.rho = value; break;
      case AxisName::eta: s.eta = value; break;
      case AxisName::kappa: s.kappa = value; break;
      case AxisName::epsilon: s.epsilon = value; break;
    }
  }
  if (kappa_eff >= 0.0) {
    if (!(s.epsilon < 1.0)) throw ValidationError("epsilon", "must be below 1 to convert kappa_eff");
    s.kappa = kappa_eff / std::sqrt(1.0 - s.epsilon);
  }
  return s;
}

SweepResult squeezing_map(const SweepGrid& grid) {
  grid.validate();
  SweepResult r;
  r.grid = grid;
  r.x_values = grid.x.values();
  r.y_values = grid.y.values();
  const std::size_t nx = r.x_values.size();
  const std::size_t ny = r.y_values.size();
  r.db.resize(nx * ny);
  r.linear.resize(nx * ny);
  parallel_for(nx, [&](std::size_t ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const SqueezeResult s = squeezing_parameter(grid.spec_at(r.x_values[ix], r.y_values[iy]));
      r.db[ix * ny + iy] = s.squeezing_db;
      r.linear[ix * ny + iy] = std::exp(-2.0 * s.xi);
    }
  });
  return r;
}

namespace {

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 100 && (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  // Endpoints can win on monotone slices.
  const double mid = 0.5 * (a + b);
  double best = mid;
  for (double cand : {lo, hi}) {
    if (f(cand) > f(best)) best = cand;
  }
  return best;
}

}  // namespace

ArgMax refine_argmax(const SweepResult& r) {
  const std::size_t ny = r.y_values.size();
  const auto best = std::max_element(r.db.begin(), r.db.end());
  const auto index = static_cast<std::size_t>(best - r.db.begin());
  const std::size_t ix = index / ny;
  const std::size_t iy = index % ny;

  const double x_lo = r.x_values[ix == 0 ? 0 : ix - 1];
  const double x_hi = r.x_values[std::min(ix + 1, r.x_values.size() - 1)];
  const double y_lo = r.y_values[iy == 0 ? 0 : iy - 1];
  const double y_hi = r.y_values[std::min(iy + 1, ny - 1)];

  const auto value = [&](double x, double y) {
    return squeezing_parameter(r.grid.spec_at(x, y)).squeezing_db;
  };
  ArgMax out{r.x_values[ix], r.y_values[iy], *best};
  for (int round = 0; round < 4; ++round) {
    out.x = golden_max([&](double x) { return value(x, out.y); }, x_lo, x_hi);
    out.y = golden_max([&](double y) { return value(out.x, y); }, y_lo, y_hi);
  }
  out.db = value(out.x, out.y);
  if (out.db < *best) out = {r.x_values[ix], r.y_values[iy], *best};
  return out;
}

std::vector<WorkingPoint> working_points() {
  struct Row {
    const char* label;
    ChannelSpec spec;
    double quoted;
  };
  const Row rows[] = {
      {"he3_k_headline", {2.0, 0.3, 0.125, 0.162}, 0.45},
      {"he3_k_lowpressure", {2.9, 0.3, 0.12, 0.02}, 0.68},
      {"xe129_rb87", {1.8, 0.28, 0.22, 0.17}, 0.34},
  };
  std::vector<WorkingPoint> out;
  for (const auto& row : rows) {
    const SqueezeResult s = squeezing_parameter(row.spec);
    out.push_back({row.label, row.spec, s.xi, s.squeezing_db, row.quoted, std::abs(s.xi - row.quoted)});
  }
  return out;
}

std::vector<LifetimeCurve> lifetime_curves(const std::vector<double>& initial_db, double gamma_b,
                                           double t_max, std::size_t steps) {
  if (steps < 2) throw ValidationError("steps", "must be >= 2");
  if (!(t_max > 0.0)) throw ValidationError("t_max", "must be positive");
  std::vector<double> times(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    times[i] = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  std::vector<LifetimeCurve> out;
  for (double db : initial_db) {
    if (!(db >= 0.0)) throw ValidationError("initial_db", fmt::format("must be >= 0, got {}", db));
    out.push_back({db, lifetime_decay(db_to_variance(db), gamma_b, times)});
  }
  return out;
}

}  // namespace nobleent
