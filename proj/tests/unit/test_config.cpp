#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "wncs/config.hpp"
#include "wncs/error.hpp"

using namespace wncs;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("wncs_test_" + name);
  std::ofstream(p) << text;
  return p;
}

bool has_violation(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("default configuration is the evaluation setup") {
  const auto c = default_config();
  CHECK(c.compute.capacity == 8);
  CHECK(c.task2.units_required == 4);
  CHECK(c.task1.gen_prob == 0.4);
  CHECK(c.task2.gen_prob == 0.1);
  CHECK(c.task1.service_slots == 10);
  CHECK(c.task1.downlink_delay == 0.1);
  CHECK(c.task1.penalty == 1.0);
  CHECK(c.task2.penalty == 10.0);
  CHECK(c.channel.noise_power == doctest::Approx(1e-8).epsilon(1e-12));
  CHECK(c.channel.snr_threshold == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-12));
  REQUIRE(c.energy_rate);
  CHECK(*c.energy_rate == 0.18);

  const auto r = validate(c);
  CHECK(r.valid());
  CHECK(r.starved_classes.empty());
  // 0.4*1*0.05 + 0.1*0.8*0.2 = 0.036 W
  CHECK(power_draw(c) == doctest::Approx(0.036));
  CHECK_FALSE(r.energy_infeasible);
}

TEST_CASE("validation reports violations without throwing") {
  auto c = default_config();
  c.task1.gen_prob = 0.7;
  c.task2.gen_prob = 0.5;
  CHECK(has_violation(validate(c), "g1 + g2"));

  c = default_config();
  c.compute.capacity = 3;
  const auto r = validate(c);
  CHECK(r.valid());
  REQUIRE(r.starved_classes.size() == 1);
  CHECK(r.starved_classes[0] == 2);

  c = default_config();
  c.task1.admit_prob = 0.0;
  c.task2.penalty = -1.0;
  c.channel.shape = 0.4;
  const auto bad = validate(c);
  CHECK(has_violation(bad, "admit_prob"));
  CHECK(has_violation(bad, "penalty"));
  CHECK(has_violation(bad, "shape"));

  c = default_config();
  c.energy_rate = 0.01;
  CHECK(validate(c).valid());
  CHECK(validate(c).energy_infeasible);
}

TEST_CASE("loading files") {
  SUBCASE("empty file gives defaults") {
    CHECK(load_config(write_temp("empty.cfg", "")) == default_config());
  }
  SUBCASE("single override") {
    auto expected = default_config();
    expected.compute.capacity = 12;
    CHECK(load_config(write_temp("cap.cfg", "capacity = 12\n")) == expected);
  }
  SUBCASE("range violation surfaces on load") {
    CHECK_THROWS_AS(load_config(write_temp("g.cfg", "gen_prob_1 = 1.2\n")), ValidationError);
  }
  SUBCASE("sections, comments, dB keys, none") {
    const auto c = parse_config(
        "# comment\n[task2]\nunits_required = 3  # trailing\n[channel]\nnoise_power_db = -90\nshape = 2\n"
        "[]\nenergy_rate = none\n");
    CHECK(c.task2.units_required == 3);
    CHECK(c.channel.noise_power == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(c.channel.shape == 2.0);
    CHECK_FALSE(c.energy_rate.has_value());
  }
  SUBCASE("parse errors carry line context") {
    try {
      parse_config("capacity = 8\nbogus.key = 1\n", "x.cfg");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("x.cfg:2") != std::string::npos);
      CHECK(std::string(e.what()).find("bogus.key") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("capacity = twelve\n"), ParseError);
    CHECK_THROWS_AS(parse_config("capacity\n"), ParseError);
    CHECK_THROWS_AS(parse_config("capacity = 1.5\n"), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/wncs.cfg"), ParseError);
  }
}

TEST_CASE("save then load is the identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = default_config();
    c.task1.gen_prob = 0.5 * u(rng);
    c.task2.gen_prob = 0.5 * u(rng);
    c.task1.admit_prob = 1.0 - u(rng) * 0.99;
    c.task2.tx_power = std::exp(-10.0 * u(rng));
    c.task2.downlink_delay = u(rng) / 3.0;
    c.channel.noise_power = 1e-9 * (1.0 + u(rng));
    c.channel.shape = 0.5 + 3.0 * u(rng);
    c.compute.capacity = 1 + static_cast<int>(20 * u(rng));
    c.rng_seed = rng();
    if (trial % 3 == 0) c.energy_rate.reset();
    const auto path = write_temp("roundtrip.cfg", "");
    save_config(c, path);
    CHECK(load_config(path) == c);
    CHECK(parse_config(to_config_text(c)) == c);
  }
}

TEST_CASE("config hash is stable and sensitive") {
  const auto a = default_config();
  auto b = a;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.task1.tx_power = 0.051;
  CHECK(config_hash(a) != config_hash(b));
}
