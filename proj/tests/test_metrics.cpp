#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "wbkin/metrics.hpp"

using namespace wbkin;

TEST_CASE("pairwise_sum reduces exactly like sequential addition") {
  CHECK(pairwise_sum({}) == 0.0);
  const std::vector<double> one = {42.5};
  CHECK(pairwise_sum(one) == 42.5);
  const std::vector<double> small = {1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(pairwise_sum(small) == 15.0);

  Rng rng = make_stream(91);
  std::vector<double> values(1000);
  for (double& v : values) v = uniform_real(rng, -10.0, 10.0);
  const double seq = std::accumulate(values.begin(), values.end(), 0.0);
  CHECK(pairwise_sum(values) == doctest::Approx(seq).epsilon(1e-12));

  // powers of two sum exactly in any association order
  std::vector<double> dyadic(64);
  for (int i = 0; i < 64; ++i) dyadic[i] = std::ldexp(1.0, -(i % 20));
  CHECK(pairwise_sum(dyadic) ==
        std::accumulate(dyadic.begin(), dyadic.end(), 0.0));
}

TEST_CASE("mean_std closed forms") {
  const std::vector<double> flat = {3.25, 3.25, 3.25};
  MeanStd ms = mean_std(flat);
  CHECK(ms.mean == 3.25);
  CHECK(ms.std == 0.0);

  const std::vector<double> steps = {1.0, 2.0, 3.0, 4.0};
  ms = mean_std(steps);
  CHECK(ms.mean == 2.5);
  CHECK(ms.std == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));

  // two-pass form keeps accuracy with a large common offset
  std::vector<double> shifted = steps;
  for (double& v : shifted) v += 1e9;
  ms = mean_std(shifted);
  CHECK(ms.std == doctest::Approx(std::sqrt(1.25)).epsilon(1e-9));

  CHECK_THROWS_AS(mean_std({}), std::invalid_argument);
}

TEST_CASE("percentile agrees with the full-sort oracle") {
  Rng rng = make_stream(92);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 1 + static_cast<int>(uniform_real(rng, 0.0, 50.0));
    std::vector<double> values(n);
    for (double& v : values) v = uniform_real(rng, -5.0, 5.0);
    double p = uniform_real(rng, 0.0, 100.0);
    if (p == 0.0) p = 100.0;
    CHECK(percentile(values, p) == oracles::sorted_percentile(values, p));
  }
}

TEST_CASE("percentile boundary behavior") {
  const std::vector<double> v = {5.0, 1.0, 4.0, 2.0, 3.0};
  CHECK(percentile(v, 100.0) == 5.0);
  CHECK(percentile(v, 1e-9) == 1.0);  // k = ceil(tiny) = 1: the minimum
  CHECK(percentile(v, 60.0) == 3.0);
  CHECK(percentile(v, 60.0000001) == 4.0);
  CHECK(percentile({9.0}, 50.0) == 9.0);

  CHECK_THROWS_AS(percentile({}, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(percentile(v, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(percentile(v, 100.5), std::invalid_argument);
  CHECK_THROWS_AS(percentile(v, -3.0), std::invalid_argument);

  // pass-by-value: the caller's list is untouched by the internal partition
  const std::vector<double> copy = v;
  (void)percentile(v, 40.0);
  CHECK(v == copy);
}

TEST_CASE("pose_errors separates translation and geodesic rotation errors") {
  Rng rng = make_stream(93);
  std::vector<AccuracySample> samples;
  for (int i = 0; i < 32; ++i) {
    AccuracySample s;
    s.target.rotation = sample_uniform_rotation(rng);
    s.target.translation = sample_in_ball(rng, 1.0);
    // offset the achieved pose by exactly 0.087 m and 0.18 rad
    Vec3d dir = sample_in_ball(rng, 1.0);
    dir.normalize();
    s.achieved.translation = s.target.translation + 0.087 * dir;
    Vec3d axis = sample_in_ball(rng, 1.0);
    axis.normalize();
    s.achieved.rotation = s.target.rotation * so3_exp(0.18 * axis);
    samples.push_back(s);
  }
  const auto [pe, re] = pose_errors(samples);
  REQUIRE(pe.size() == samples.size());
  REQUIRE(re.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(pe[i] == doctest::Approx(0.087).epsilon(1e-12));
    CHECK(re[i] == doctest::Approx(0.18).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pose_errors({}), std::invalid_argument);
}

TEST_CASE("velocity tracking errors reduce to mean and std of norms") {
  std::vector<VelocitySample> samples(2);
  samples[0].cmd_linear = Vec3d(1.0, 0.0, 0.0);
  samples[0].measured_linear = Vec3d(0.0, 0.0, 0.0);  // error 1
  samples[0].cmd_angular = 0.5;
  samples[0].measured_angular = 0.2;  // error 0.3
  samples[1].cmd_linear = Vec3d(0.0, 3.0, 4.0);
  samples[1].measured_linear = Vec3d(0.0, 0.0, 0.0);  // error 5
  samples[1].cmd_angular = -0.1;
  samples[1].measured_angular = 0.6;  // error 0.7

  const VelocityErrorSummary ves = velocity_tracking_errors(samples);
  CHECK(ves.lvte_mean == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(ves.lvte_std == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ves.avte_mean == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ves.avte_std == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(velocity_tracking_errors({}), std::invalid_argument);
}

TEST_CASE("ik_solution_rate counts feasible cases, order-independently") {
  const RobotModel m = support::planar2r();
  IkParams params;
  params.weight.setZero();
  params.weight.diagonal() << 0, 0, 0, 1, 1, 1;
  params.tol = 1e-5;
  params.max_iters = 100;

  std::vector<IkRateCase> cases(4);
  cases[0].world_target.translation = Vec3d(1.0, 0.5, 0.0);   // reachable
  cases[1].world_target.translation = Vec3d(-0.8, 1.1, 0.0);  // reachable
  cases[2].world_target.translation = Vec3d(0.3, -1.4, 0.0);  // reachable
  cases[3].world_target.translation = Vec3d(4.0, 0.0, 0.0);   // out of reach
  for (IkRateCase& c : cases)
    c.world_target.rotation = so3_exp(Vec3d(
        0, 0,
        std::atan2(c.world_target.translation.y(),
                   c.world_target.translation.x())));

  const double rate = ik_solution_rate(cases, m, params, 6, 17);
  CHECK(rate == 0.75);

  std::vector<IkRateCase> shuffled = {cases[2], cases[0], cases[3], cases[1]};
  CHECK(ik_solution_rate(shuffled, m, params, 6, 17) == rate);
  CHECK(ik_solution_rate(cases, m, params, 6, 17) == rate);  // repeatable

  CHECK_THROWS_AS(ik_solution_rate({}, m, params, 6, 17),
                  std::invalid_argument);
}
