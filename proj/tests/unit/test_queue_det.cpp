#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "wncs/error.hpp"
#include "wncs/queue_det.hpp"

using namespace wncs;
using det::DetState;

namespace {

QueueModel model(int c, int n2, int d1, int d2, double a1, double a2) {
  QueueModel m;
  m.capacity = c;
  m.units1 = 1;
  m.units2 = n2;
  m.service1 = d1;
  m.service2 = d2;
  m.arrive1 = a1;
  m.arrive2 = a2;
  return m;
}

}  // namespace

TEST_CASE("state count bound") {
  CHECK(det::count_states(2, 2, 2, 2) == 6);
  CHECK(det::count_states(3, 2, 3 + 4 * 2, 4) == (1u << 3) * (1u << 2));
  CHECK(det::count_states(5, 10, 12, 4) == oracle::brute_count_det(5, 10, 12, 4));
  for (int d1 = 1; d1 <= 4; ++d1)
    for (int d2 = 1; d2 <= 4; ++d2)
      for (int c = 1; c <= 6; ++c)
        for (int n = 1; n <= 3; ++n) CHECK(det::count_states(d1, d2, c, n) == oracle::brute_count_det(d1, d2, c, n));
  CHECK_THROWS_AS(det::count_states(0, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(det::count_states(63, 63, 200, 1), ResourceError);
}

TEST_CASE("admission kernel") {
  const auto m = model(8, 4, 10, 10, 0.3, 0.1);
  auto k = det::admission_kernel(m, DetState{});
  CHECK(k.first == 0.3);
  CHECK(k.second == 0.1);
  CHECK(k.none == doctest::Approx(0.6));

  // Full: four class-1 tasks plus one class-2 task.
  const DetState full{0b1111, 0b1};
  CHECK(det::occupancy(m, full) == 8);
  k = det::admission_kernel(m, full);
  CHECK(k.none == 1.0);
  CHECK(k.first == 0.0);
  CHECK(k.second == 0.0);

  // N - 1 = 3 free units.
  const DetState tight{0b11111, 0};
  k = det::admission_kernel(m, tight);
  CHECK(k.second == 0.0);
  CHECK(k.first == 0.3);
}

TEST_CASE("pipeline shift") {
  auto m = model(8, 4, 3, 1, 0.5, 0.5);
  // v1 = [1,0,1] (k=1 first) -> [0,1,1] after admission.
  const DetState s{0b101, 0};
  CHECK(det::next_state(m, s, true, false).pipeline1 == 0b110);
  CHECK(det::next_state(m, DetState{}, false, false) == DetState{});
  // D2 = 1: the running task leaves as the next one enters.
  CHECK(det::next_state(m, DetState{0, 1}, false, true).pipeline2 == 1u);
  CHECK_THROWS_AS(det::next_state(m, DetState{}, true, true), std::invalid_argument);
  m.capacity = 4;
  CHECK_THROWS_AS(det::next_state(m, DetState{0, 1}, false, true), std::invalid_argument);
}

TEST_CASE("reachable state enumeration") {
  auto space = det::StateSpace::enumerate(model(1, 1, 1, 1, 0.2, 0.3));
  CHECK(space->size() == 3);
  CHECK(space->index_of(DetState{}) == 0);
  CHECK(space->index_of(DetState{1, 0}) >= 0);
  CHECK(space->index_of(DetState{0, 1}) >= 0);

  CHECK(det::StateSpace::enumerate(model(8, 4, 10, 10, 0.0, 0.0))->size() == 1);

  const auto m = model(12, 4, 5, 10, 0.2, 0.05);
  space = det::StateSpace::enumerate(m);
  CHECK(space->size() <= det::count_states(5, 10, 12, 4));
  const auto ref = oracle::det_chain(12, 1, 4, 5, 10, 0.2, 0.05);
  CHECK(space->size() == ref.states.size());
  for (std::size_t i = 0; i < space->size(); ++i) {
    const auto& s = space->states()[i];
    CHECK(det::occupancy(m, s) <= 12);
    double row = 0.0;
    for (const auto& t : space->transitions(i)) row += t.prob;
    CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
  }
  for (const auto& [v1, v2] : ref.states) CHECK(space->index_of(DetState{v1, v2}) >= 0);

  CHECK_THROWS_AS(det::StateSpace::enumerate(m, 100), ResourceError);
  CHECK_THROWS_AS(det::StateSpace::enumerate(model(12, 4, 64, 10, 0.2, 0.05)), ResourceError);
}

TEST_CASE("stationary distribution") {
  SUBCASE("no arrivals") {
    const auto s = det::solve_steady_state(model(8, 4, 10, 10, 0.0, 0.0));
    REQUIRE(s.probs.size() == 1);
    CHECK(s.probs[0] == 1.0);
    CHECK(det::availability_prob(s, 4) == 1.0);
    CHECK(det::availability_prob(s, 9) == 0.0);
  }
  SUBCASE("two-state chain") {
    const double a = 0.35;
    const auto s = det::solve_steady_state(model(1, 1, 1, 1, a, 0.0));
    CHECK(s.probs[0] == doctest::Approx(1.0 / (1.0 + a)).epsilon(1e-12));
    CHECK(det::availability_prob(s, 1) == doctest::Approx(1.0 / (1.0 + a)).epsilon(1e-12));
    CHECK(s.residual <= 1e-10);
  }
  SUBCASE("independent chain and dense solve") {
    for (auto [c, n2, d1, d2, a1, a2] : {std::tuple{4, 2, 3, 2, 0.3, 0.2}, std::tuple{6, 3, 2, 4, 0.5, 0.3},
                                         std::tuple{5, 1, 4, 4, 0.25, 0.25}}) {
      const auto m = model(c, n2, d1, d2, a1, a2);
      const auto s = det::solve_steady_state(m);
      const auto ref = oracle::det_chain(c, 1, n2, d1, d2, a1, a2);
      std::vector<std::vector<double>> p(ref.states.size(), std::vector<double>(ref.states.size(), 0.0));
      for (std::size_t i = 0; i < ref.states.size(); ++i)
        for (auto [to, pr] : ref.rows[i]) p[i][static_cast<std::size_t>(to)] += pr;
      const auto pi = oracle::stationary_dense(p);
      for (std::size_t i = 0; i < ref.states.size(); ++i) {
        const auto idx = s.space->index_of(DetState{ref.states[i].first, ref.states[i].second});
        REQUIRE(idx >= 0);
        CHECK(std::abs(s.probs[static_cast<std::size_t>(idx)] - pi[i]) <= 1e-12);
      }
      for (int need : {1, n2})
        CHECK(det::availability_prob(s, need) == doctest::Approx(oracle::availability(pi, ref.occupancy, c, need)));
      double total = 0.0;
      for (double v : s.probs) {
        CHECK(v >= 0.0);
        total += v;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(det::balance_residual(*s.space, s.probs) <= 1e-10);
    }
  }
}

TEST_CASE("triplet dump") {
  const auto space = det::StateSpace::enumerate(model(1, 1, 1, 1, 0.2, 0.3));
  std::ostringstream out;
  det::write_triplets(out, *space);
  const std::string text = out.str();
  CHECK(text.rfind("# wncs-triplets v1 engine=det states=3 nonzeros=", 0) == 0);
  CHECK(text.find("state 0 0 0\n") != std::string::npos);
  CHECK(text.find("0 0 0.5\n") != std::string::npos);
}
