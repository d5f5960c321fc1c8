#include <doctest.h>

#include <cmath>
#include <random>

#include "nobleent/error.hpp"
#include "nobleent/statistics.hpp"
#include "nobleent/stochastic.hpp"
#include "support.hpp"

using namespace nobleent;

TEST_CASE("moments of a fixed sample") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const Moments m = compute_moments(v);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.variance == doctest::Approx(5.0 / 3.0));
  // m4 = (2.25^2 * 2 + 0.25^2 * 2) / 4, s^2 biased = 1.25
  CHECK(m.stderr_variance == doctest::Approx(std::sqrt((2.5625 - 1.5625) / 4.0)));
  CHECK(compute_moments(std::vector<double>{3.0}).variance == 0.0);
}

TEST_CASE("moments survive a large offset") {
  std::vector<double> v;
  for (int i = 0; i < 1000; ++i) v.push_back(1e9 + (i % 2 == 0 ? 1.0 : -1.0));
  CHECK(compute_moments(v).variance == doctest::Approx(1000.0 / 999.0).epsilon(1e-9));
}

TEST_CASE("substreams are reproducible and distinct") {
  auto a = substream(42, 0);
  auto b = substream(42, 0);
  auto c = substream(42, 1);
  auto d = substream(43, 0);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(parallel_for(10, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("boom");
  }));
}

TEST_CASE("vacuum passes through at kappa = 0") {
  McSettings s;
  s.n_samples = 100000;
  s.seed = 5;
  const TrajectoryStats stats = sample_io({0.0, 0.3, 0.2, 0.1}, s);
  const Moments& m = stats.at("p_b_feedback");
  CHECK(std::abs(m.variance - 0.5) < 3.0 * m.stderr_variance);
  CHECK(stats.n_samples == 100000);
}

TEST_CASE("headline spec matches the closed form") {
  McSettings s;
  s.n_samples = 100000;
  s.seed = 42;
  const ChannelSpec spec{2.0, 0.3, 0.125, 0.162};
  const TrajectoryStats stats = sample_io(spec, s);
  const Moments& fb = stats.at("p_b_feedback");
  CHECK(post_feedback_variance(spec) == doctest::Approx(0.5 * 1.8036 / 4.2536).epsilon(1e-12));
  CHECK(std::abs(fb.variance - 0.2120) < 3.0 * fb.stderr_variance + 1e-4);
  CHECK(std::abs(fb.variance - post_feedback_variance(spec)) < 3.0 * fb.stderr_variance);
  const Moments& x = stats.at("x_L_out");
  const double var_x = 0.5 * (0.7 * (1.0 + 4.0 * 1.162) + 0.3);
  CHECK(std::abs(x.variance - var_x) < 3.0 * x.stderr_variance);
  CHECK_THROWS_AS(stats.at("nope"), std::out_of_range);
}

TEST_CASE("same seed gives bitwise-identical statistics") {
  McSettings s;
  s.n_samples = 20000;
  s.seed = 99;
  const ChannelSpec spec{1.3, 0.1, 0.2, 0.05};
  const TrajectoryStats a = sample_io(spec, s);
  const TrajectoryStats b = sample_io(spec, s);
  for (std::size_t i = 0; i < a.observables.size(); ++i) {
    CHECK(a.observables[i].moments.mean == b.observables[i].moments.mean);
    CHECK(a.observables[i].moments.variance == b.observables[i].moments.variance);
    CHECK(a.observables[i].moments.stderr_variance == b.observables[i].moments.stderr_variance);
  }
  s.seed = 100;
  CHECK(sample_io(spec, s).at("p_b_feedback").variance != a.at("p_b_feedback").variance);
}

TEST_CASE("settings validation") {
  McSettings s;
  s.n_samples = 0;
  CHECK_THROWS_AS(sample_io({1.0, 0.0, 0.0, 0.0}, s), ValidationError);
  s = {};
  s.dt = 0.0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = {};
  s.t_final = s.dt / 2.0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}
