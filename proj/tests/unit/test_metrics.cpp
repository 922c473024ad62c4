#include <doctest.h>

#include <cmath>

#include "wncs/analysis.hpp"
#include "wncs/channel.hpp"
#include "wncs/metrics.hpp"
#include "wncs/queue_det.hpp"
#include "wncs/simulator.hpp"

using namespace wncs;

TEST_CASE("age of actuation") {
  CHECK(task_aoa(1, 1, 1, 1, 0, 0) == 1.0);
  CHECK(task_aoa(0.5, 1, 1, 1, 2, 1) == 5.0);
  CHECK(is_unbounded(task_aoa(0.0, 1, 1, 1, 10, 0.1)));
  CHECK(is_unbounded(task_aoa(0.4, 1, 1, 0.0, 10, 0.1)));
  for (double avail : {0.01, 0.3, 1.0}) CHECK(task_aoa(0.3, 0.9, 0.8, avail, 10, 0.1) >= 1 + 10 + 0.1);
}

TEST_CASE("cost of missing actuation") {
  const ClassTerms ok1{0.4, 1, 1, 1, 1}, ok2{0.1, 1, 1, 1, 10};
  CHECK(coma(ok1, ok2) == 0.0);
  const ClassTerms miss1{0.4, 0, 1, 1, 1}, miss2{0.1, 0, 1, 1, 10};
  CHECK(coma(miss1, miss2) == doctest::Approx(0.4 * 1 + 0.1 * 10));
  const ClassTerms t1{0.4, 0.5, 0.9, 0.8, 1}, t2{0.1, 0.8, 0.95, 0.6, 10};
  const double v = coma(t1, t2);
  CHECK(v == doctest::Approx(0.4 * (1 - 0.5 * 0.9 * 0.8) + 1.0 * (1 - 0.8 * 0.95 * 0.6)));
  CHECK(v >= 0.0);
  CHECK(v <= 0.4 + 1.0);
}

TEST_CASE("AoI baseline") {
  CHECK(aoi_baseline(0.5, 1, 1, 0.5, 1, 1) == 1.0);
  CHECK(aoi_baseline(0.2, 1, 1, 0.05, 1, 1) == doctest::Approx(4.0));
  CHECK(is_unbounded(aoi_baseline(0, 0, 0, 0, 0, 0)));
}

TEST_CASE("zero loads with the product form") {
  auto c = default_config();
  c.task1.gen_prob = 0.0;
  c.task2.gen_prob = 0.0;
  const auto m = analyze(c, Engine::erlang);
  CHECK(m.availability[0] == 1.0);
  CHECK(m.availability[1] == 1.0);
  CHECK(m.coma == 0.0);
  CHECK(is_unbounded(m.aoa[0]));
  CHECK(is_unbounded(m.aoi));
}

TEST_CASE("composition by hand") {
  const auto c = default_config();
  const double p1 = uplink_success_prob(c.channel, c.task1.tx_power);
  const double p2 = uplink_success_prob(c.channel, c.task2.tx_power);
  QueueModel qm = QueueModel::ideal_uplink(c);
  qm.arrive1 *= p1;
  qm.arrive2 *= p2;
  const auto s = det::solve_steady_state(qm);
  const double av1 = det::availability_prob(s, 1);
  const double av2 = det::availability_prob(s, 4);
  const auto m = analyze(c, Engine::det);
  CHECK(m.availability[0] == doctest::Approx(av1).epsilon(1e-14));
  CHECK(m.aoa[0] == doctest::Approx(1.0 / (0.4 * 1.0 * p1 * av1) + 10.1).epsilon(1e-14));
  CHECK(m.aoa[1] == doctest::Approx(1.0 / (0.1 * 0.8 * p2 * av2) + 10.1).epsilon(1e-14));
  CHECK(m.coma == doctest::Approx(0.4 * (1 - p1 * av1) + 10 * 0.1 * (1 - 0.8 * p2 * av2)).epsilon(1e-14));
  CHECK(m.aoi == doctest::Approx(1.0 / (0.4 * p1 + 0.08 * p2)).epsilon(1e-14));
}

TEST_CASE("cost rate matches simulation with the matching service model") {
  const auto c = default_config();
  const auto det_m = analyze(c, Engine::det);
  sim::SimOptions o;
  o.service = sim::ServiceMode::deterministic;
  const auto rd = sim::run(c, o);
  CHECK(std::abs(rd.coma.mean - det_m.coma) <= 3 * rd.coma.std_error);

  const auto geo_m = analyze(c, Engine::geo_mg);
  o.service = sim::ServiceMode::geometric;
  const auto rg = sim::run(c, o);
  CHECK(std::abs(rg.coma.mean - geo_m.coma) <= 3 * rg.coma.std_error);
}
