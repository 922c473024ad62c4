#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wncs/error.hpp"
#include "wncs/queue_geo.hpp"

using namespace wncs;
using geo::GeoState;

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

double inf_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("state counts") {
  CHECK(geo::count_states_geo(8, 4) == 15);
  // 13 + 9 + 5 + 1 lattice points.
  CHECK(geo::count_states_geo(12, 4) == 28);
  for (int c = 1; c <= 30; ++c) {
    CHECK(geo::count_states_geo(c, 1) == static_cast<std::uint64_t>((c + 1) * (c + 2) / 2));
    for (int n = 1; n <= 6; ++n) {
      CHECK(geo::count_states_geo(c, n) == oracle::brute_count_geo(c, n));
      CHECK(geo::StateSpace(c, 1, n).size() == geo::count_states_geo(c, n));
    }
  }
}

TEST_CASE("state space ordering") {
  const geo::StateSpace s(8, 1, 4);
  CHECK(s.levels() == 9);
  CHECK(s.level_size(0) == 3);
  CHECK(s.level_size(4) == 2);
  CHECK(s.level_size(8) == 1);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.index_of(s.states()[i]) == i);
  CHECK(s.states()[0] == GeoState{0, 0});
  CHECK(s.states()[1] == GeoState{0, 1});
  CHECK(s.contains(GeoState{4, 1}));
  CHECK_FALSE(s.contains(GeoState{5, 1}));
}

TEST_CASE("binomial departures") {
  CHECK(geo::binomial_departure(0, 0.3, 0) == 1.0);
  CHECK(geo::binomial_departure(2, 0.5, 1) == doctest::Approx(0.5));
  CHECK(geo::binomial_departure(2, 0.5, 3) == 0.0);
  CHECK(geo::binomial_departure(3, 1.0, 0) == 1.0);
  CHECK(geo::binomial_departure(3, 0.0, 3) == 1.0);
  CHECK(geo::binomial_departure(3, 0.0, 2) == 0.0);
  double s = 0.0;
  for (int k = 0; k <= 40; ++k) s += geo::binomial_departure(40, 0.1, k);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("transition probabilities") {
  auto m = model(8, 4, 10, 10, 0.3, 0.1);
  CHECK(geo::transition_prob_geo({0, 0}, {1, 0}, m) == doctest::Approx(0.3));
  CHECK(geo::transition_prob_geo({0, 0}, {0, 1}, m) == doctest::Approx(0.1));
  CHECK(geo::transition_prob_geo({0, 0}, {1, 1}, m) == 0.0);

  const auto c1 = model(1, 4, 4, 10, 0.3, 0.0);
  CHECK(geo::transition_prob_geo({1, 0}, {0, 0}, c1) == doctest::Approx(0.25));

  const geo::StateSpace space(8, 1, 4);
  const auto p = geo::transition_matrix(m, space);
  for (std::size_t r = 0; r < space.size(); ++r) {
    double row = 0.0;
    for (double v : p.row(r)) {
      CHECK(v >= 0.0);
      row += v;
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-13));
  }

  const auto ref = oracle::geo_chain(8, 1, 4, 0.3, 0.1, 0.1, 0.1);
  for (std::size_t i = 0; i < ref.states.size(); ++i)
    for (std::size_t j = 0; j < ref.states.size(); ++j) {
      const GeoState a{ref.states[i].first, ref.states[i].second};
      const GeoState b{ref.states[j].first, ref.states[j].second};
      CHECK(std::abs(p(space.index_of(a), space.index_of(b)) - ref.p[i][j]) <= 1e-15);
    }
}

TEST_CASE("level partition is block lower Hessenberg") {
  const auto part = geo::partition(model(12, 4, 5, 10, 0.4, 0.1));
  const int levels = part.space.levels();
  REQUIRE(static_cast<int>(part.blocks.size()) == levels);
  for (int j = 0; j < levels; ++j)
    for (int k = j + 2; k < levels; ++k)
      for (std::size_t r = 0; r < part.blocks[j][k].rows(); ++r)
        for (double v : part.blocks[j][k].row(r)) CHECK(v == 0.0);
}

TEST_CASE("direct and matrix-geometric solutions") {
  SUBCASE("no arrivals") {
    const auto s = geo::solve_direct(model(8, 4, 10, 10, 0, 0));
    CHECK(s.probs[0] == doctest::Approx(1.0));
    const auto g = geo::solve_matrix_geometric(model(8, 4, 10, 10, 0, 0));
    CHECK(g.probs[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("single class, one unit") {
    const double a = 0.3, mu = 0.25;
    const auto m = model(1, 4, 4, 10, a, 0.0);
    for (const auto& s : {geo::solve_direct(m), geo::solve_matrix_geometric(m)}) {
      REQUIRE(s.probs.size() == 2);
      CHECK(s.probs[0] == doctest::Approx(mu / (a + mu)).epsilon(1e-12));
      CHECK(s.probs[1] == doctest::Approx(a / (a + mu)).epsilon(1e-12));
    }
  }
  SUBCASE("agreement with the independent chain") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 15; ++trial) {
      const int c = 1 + static_cast<int>(rng() % 12);
      const int n2 = 1 + static_cast<int>(rng() % 4);
      const int d1 = 1 + static_cast<int>(rng() % 12);
      const int d2 = 1 + static_cast<int>(rng() % 12);
      const double a1 = 0.6 * u(rng);
      const double a2 = (1.0 - a1) * u(rng);
      const auto m = model(c, n2, d1, d2, a1, a2);
      const auto ref = oracle::geo_chain(c, 1, n2, a1, a2, 1.0 / d1, 1.0 / d2);
      const auto pi = oracle::stationary_dense(ref.p);
      const auto direct = geo::solve_direct(m);
      const auto mg = geo::solve_matrix_geometric(m);
      std::vector<double> mapped(pi.size());
      std::vector<int> occ(pi.size());
      for (std::size_t i = 0; i < pi.size(); ++i) {
        const auto idx = direct.space.index_of({ref.states[i].first, ref.states[i].second});
        mapped[idx] = pi[i];
        occ[idx] = ref.states[i].first + n2 * ref.states[i].second;
      }
      CHECK(inf_norm_diff(direct.probs, mapped) <= 1e-12);
      CHECK(inf_norm_diff(mg.probs, mapped) <= 1e-10);
      CHECK(direct.residual <= 1e-12);
      CHECK(geo::balance_residual(m, mg) <= 1e-10);
      CHECK(geo::availability_prob(mg, n2) == doctest::Approx(oracle::availability(mapped, occ, c, n2)));
    }
  }
  SUBCASE("default and comparison settings") {
    for (const auto& m : {model(8, 4, 10, 10, 0.4 * 0.92, 0.08 * 0.98), model(12, 4, 5, 10, 0.2, 0.05)}) {
      const auto d = geo::solve_direct(m);
      const auto g = geo::solve_matrix_geometric(m);
      CHECK(inf_norm_diff(d.probs, g.probs) <= 1e-10);
    }
  }
}

TEST_CASE("availability edge cases") {
  const auto s = geo::solve_direct(model(8, 4, 10, 10, 0, 0));
  CHECK(geo::availability_prob(s, 8) == doctest::Approx(1.0));
  CHECK(geo::availability_prob(s, 9) == 0.0);
}

TEST_CASE("triplet dump") {
  const auto m = model(1, 4, 4, 10, 0.3, 0.0);
  std::ostringstream out;
  geo::write_triplets(out, m, geo::StateSpace(1, 1, 4));
  CHECK(out.str().rfind("# wncs-triplets v1 engine=geo states=2", 0) == 0);
}
