#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "nobleent/error.hpp"
#include "nobleent/output.hpp"
#include "nobleent/sweep.hpp"

using namespace nobleent;

namespace {

std::size_t nearest(const std::vector<double>& v, double target) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i] - target) < std::abs(v[best] - target)) best = i;
  }
  return best;
}

}  // namespace

TEST_CASE("axis values and names") {
  Axis lin{AxisName::kappa_eff, 0.0, 5.0, 101, AxisScale::linear};
  const auto xs = lin.values();
  CHECK(xs.size() == 101);
  CHECK(xs.front() == 0.0);
  CHECK(xs.back() == 5.0);
  CHECK(xs[50] == doctest::Approx(2.5));

  Axis lg{AxisName::rho, 1e-3, 1.0, 4, AxisScale::log};
  const auto ys = lg.values();
  CHECK(ys[1] == doctest::Approx(1e-2));
  CHECK(ys.back() == 1.0);

  CHECK(parse_axis_name("sigma_b/sigma_L") == AxisName::kappa_eff);
  CHECK(parse_axis_name("sigma_a/sigma_b") == AxisName::rho);
  CHECK(parse_axis_name(to_string(AxisName::eta)) == AxisName::eta);
  CHECK_THROWS_AS(parse_axis_name("zeta"), ValidationError);

  lg.min = 0.0;
  CHECK_THROWS_AS(lg.validate("y"), ValidationError);
  lin.steps = 1;
  CHECK_THROWS_AS(lin.validate("x"), ValidationError);
}

TEST_CASE("standard map structure") {
  const SweepResult r = squeezing_map(SweepGrid::standard(0.12));
  REQUIRE(r.x_values.size() == 101);
  REQUIRE(r.y_values.size() == 101);
  REQUIRE(r.db.size() == 101 * 101);

  for (std::size_t iy = 0; iy < r.y_values.size(); ++iy) CHECK(r.db_at(0, iy) == 0.0);

  for (std::size_t ix = 1; ix < r.x_values.size(); ++ix) {
    for (std::size_t iy = 1; iy < r.y_values.size(); ++iy) {
      REQUIRE(r.db_at(ix, iy) < r.db_at(ix, iy - 1));
    }
  }
  for (std::size_t i = 0; i < r.db.size(); ++i) {
    REQUIRE(r.linear[i] == doctest::Approx(std::pow(10.0, -r.db[i] / 10.0)).epsilon(1e-12));
  }

  const SweepResult worse = squeezing_map(SweepGrid::standard(0.22));
  for (std::size_t i = 0; i < r.db.size(); ++i) REQUIRE(r.db[i] >= worse.db[i]);
}

TEST_CASE("map node near the headline working point") {
  const SweepResult r = squeezing_map(SweepGrid::standard(0.12));
  const std::size_t ix = nearest(r.x_values, 2.43);
  const std::size_t iy = nearest(r.y_values, 0.02);
  // Closed form at the node itself, independent of the map code.
  const double x = r.x_values[ix];
  const double y = r.y_values[iy];
  const double s = x * x;
  const double expected = 10.0 * std::log10((s * (1.0 + y) + 1.0) / (s * (0.12 + y) + 1.0));
  CHECK(r.db_at(ix, iy) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.db_at(ix, iy) == doctest::Approx(5.85).epsilon(0.1 / 5.85));
}

TEST_CASE("argmax refinement sits on the grid corner") {
  const SweepResult r = squeezing_map(SweepGrid::standard(0.12));
  const ArgMax a = refine_argmax(r);
  CHECK(a.x == doctest::Approx(5.0));
  CHECK(a.y == doctest::Approx(1e-3));
  double best = -std::numeric_limits<double>::infinity();
  for (double v : r.db) best = std::max(best, v);
  CHECK(a.db >= best - 1e-12);
}

TEST_CASE("spec_at converts kappa_eff") {
  const SweepGrid g = SweepGrid::standard(0.12);
  const ChannelSpec s = g.spec_at(2.0, 0.1);
  CHECK(s.kappa * std::sqrt(1.0 - s.epsilon) == doctest::Approx(2.0));
  CHECK(s.epsilon == 0.3);
  CHECK(s.eta == 0.12);
  CHECK(s.rho == 0.1);
}

TEST_CASE("working points agree with the quoted squeezing") {
  const auto rows = working_points();
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].label == "he3_k_headline");
  for (const auto& row : rows) {
    CHECK(row.abs_dev <= 0.05);
    CHECK(row.db_computed == doctest::Approx(20.0 * row.xi_computed / std::log(10.0)));
  }
}

TEST_CASE("lifetime curves") {
  const auto curves = lifetime_curves({0.0, 10.0}, 1.0, 1.0, 11);
  REQUIRE(curves.size() == 2);
  for (const auto& p : curves[0].points) CHECK(std::abs(p.db) < 1e-12);
  const auto& deep = curves[1].points;
  CHECK(deep.front().db == doctest::Approx(10.0));
  CHECK(deep[5].t == doctest::Approx(0.5));
  CHECK(deep[5].db == doctest::Approx(1.746).epsilon(1e-3));
  CHECK_THROWS_AS(lifetime_curves({1.0}, 1.0, 1.0, 1), ValidationError);
}

TEST_CASE("map CSV is byte-identical between runs") {
  SweepGrid g = SweepGrid::standard(0.12);
  g.x.steps = 21;
  g.y.steps = 17;
  const std::string a = map_csv(squeezing_map(g));
  const std::string b = map_csv(squeezing_map(g));
  CHECK(a == b);
  CHECK(a.rfind("kappa_eff,rho,value_db\n", 0) == 0);
  CHECK(std::count(a.begin(), a.end(), '\n') == 1 + 21 * 17);
  CHECK(map_linear_csv(squeezing_map(g)).rfind("kappa_eff,rho,value_linear\n", 0) == 0);
}
