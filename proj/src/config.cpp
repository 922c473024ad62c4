#include "wncs/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "wncs/error.hpp"
#include "wncs/format.hpp"

namespace wncs {

SystemConfig default_config() {
  SystemConfig c;
  c.task1 = TaskClassParams{.gen_prob = 0.4,
                            .admit_prob = 1.0,
                            .tx_power = 0.05,
                            .units_required = 1,
                            .service_slots = 10,
                            .downlink_delay = 0.1,
                            .penalty = 1.0};
  c.task2 = TaskClassParams{.gen_prob = 0.1,
                            .admit_prob = 0.8,
                            .tx_power = 0.2,
                            .units_required = 4,
                            .service_slots = 10,
                            .downlink_delay = 0.1,
                            .penalty = 10.0};
  c.channel = ChannelParams{.shape = 1.0,
                            .pathloss_exp = 3.0,
                            .distance = 50.0,
                            .noise_power = db_to_linear(-80.0),
                            .snr_threshold = db_to_linear(5.0)};
  c.compute.capacity = 8;
  c.energy_rate = 0.18;
  c.sim_slots = 1'000'000;
  c.rng_seed = 1;
  return c;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double power_draw(const SystemConfig& config) {
  return config.task1.gen_prob * config.task1.admit_prob * config.task1.tx_power +
         config.task2.gen_prob * config.task2.admit_prob * config.task2.tx_power;
}

namespace {

void check_task(const TaskClassParams& t, int cls, std::vector<std::string>& out) {
  const std::string p = "task" + std::to_string(cls) + ".";
  if (!(t.gen_prob >= 0.0 && t.gen_prob <= 1.0)) out.push_back(p + "gen_prob must lie in [0, 1]");
  if (!(t.admit_prob > 0.0 && t.admit_prob <= 1.0)) out.push_back(p + "admit_prob must lie in (0, 1]");
  if (!(t.tx_power > 0.0) || !std::isfinite(t.tx_power)) out.push_back(p + "tx_power must be > 0");
  if (t.units_required < 1) out.push_back(p + "units_required must be >= 1");
  if (t.service_slots < 1) out.push_back(p + "service_slots must be >= 1");
  if (!(t.downlink_delay >= 0.0) || !std::isfinite(t.downlink_delay))
    out.push_back(p + "downlink_delay must be >= 0");
  if (!(t.penalty >= 0.0) || !std::isfinite(t.penalty)) out.push_back(p + "penalty must be >= 0");
}

}  // namespace

ValidationReport validate(const SystemConfig& config) {
  ValidationReport r;
  check_task(config.task1, 1, r.violations);
  check_task(config.task2, 2, r.violations);
  if (config.task1.gen_prob + config.task2.gen_prob > 1.0)
    r.violations.push_back("g1 + g2 <= 1 violated (at most one generation per slot)");

  const auto& ch = config.channel;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) r.violations.push_back(std::string("channel.") + name + " must be > 0");
  };
  if (!(ch.shape >= 0.5) || !std::isfinite(ch.shape)) r.violations.push_back("channel.shape must be >= 0.5");
  positive(ch.pathloss_exp, "pathloss_exp");
  positive(ch.distance, "distance");
  positive(ch.noise_power, "noise_power");
  positive(ch.snr_threshold, "snr_threshold");

  if (config.compute.capacity < 1) r.violations.push_back("compute.capacity must be >= 1");
  if (config.sim_slots < 1) r.violations.push_back("sim_slots must be >= 1");
  if (config.energy_rate && (!(*config.energy_rate >= 0.0) || !std::isfinite(*config.energy_rate)))
    r.violations.push_back("energy_rate must be >= 0");

  for (int cls : {1, 2}) {
    if (config.task(cls).units_required > config.compute.capacity) r.starved_classes.push_back(cls);
  }
  if (config.energy_rate && r.violations.empty()) r.energy_infeasible = power_draw(config) > *config.energy_rate;
  return r;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Setter {
  std::function<void(SystemConfig&, const std::string&)> apply;
};

double to_double(const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("not a number");
  return out;
}

template <typename Int>
Int to_int(const std::string& v) {
  Int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("not an integer");
  return out;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    for (int cls : {1, 2}) {
      const std::string p = "task" + std::to_string(cls) + ".";
      t[p + "gen_prob"] = {[cls](SystemConfig& c, const std::string& v) { c.task(cls).gen_prob = to_double(v); }};
      t[p + "admit_prob"] = {[cls](SystemConfig& c, const std::string& v) { c.task(cls).admit_prob = to_double(v); }};
      t[p + "tx_power"] = {[cls](SystemConfig& c, const std::string& v) { c.task(cls).tx_power = to_double(v); }};
      t[p + "units_required"] = {
          [cls](SystemConfig& c, const std::string& v) { c.task(cls).units_required = to_int<int>(v); }};
      t[p + "service_slots"] = {
          [cls](SystemConfig& c, const std::string& v) { c.task(cls).service_slots = to_int<int>(v); }};
      t[p + "downlink_delay"] = {
          [cls](SystemConfig& c, const std::string& v) { c.task(cls).downlink_delay = to_double(v); }};
      t[p + "penalty"] = {[cls](SystemConfig& c, const std::string& v) { c.task(cls).penalty = to_double(v); }};
    }
    t["channel.shape"] = {[](SystemConfig& c, const std::string& v) { c.channel.shape = to_double(v); }};
    t["channel.pathloss_exp"] = {[](SystemConfig& c, const std::string& v) { c.channel.pathloss_exp = to_double(v); }};
    t["channel.distance"] = {[](SystemConfig& c, const std::string& v) { c.channel.distance = to_double(v); }};
    t["channel.noise_power"] = {[](SystemConfig& c, const std::string& v) { c.channel.noise_power = to_double(v); }};
    t["channel.noise_power_db"] = {
        [](SystemConfig& c, const std::string& v) { c.channel.noise_power = db_to_linear(to_double(v)); }};
    t["channel.snr_threshold"] = {
        [](SystemConfig& c, const std::string& v) { c.channel.snr_threshold = to_double(v); }};
    t["channel.snr_threshold_db"] = {
        [](SystemConfig& c, const std::string& v) { c.channel.snr_threshold = db_to_linear(to_double(v)); }};
    t["compute.capacity"] = {[](SystemConfig& c, const std::string& v) { c.compute.capacity = to_int<int>(v); }};
    t["energy_rate"] = {[](SystemConfig& c, const std::string& v) {
      if (v == "none") {
        c.energy_rate.reset();
      } else {
        c.energy_rate = to_double(v);
      }
    }};
    t["sim_slots"] = {[](SystemConfig& c, const std::string& v) { c.sim_slots = to_int<std::int64_t>(v); }};
    t["rng_seed"] = {[](SystemConfig& c, const std::string& v) { c.rng_seed = to_int<std::uint64_t>(v); }};
    return t;
  }();
  return table;
}

// "capacity" -> "compute.capacity", "gen_prob_1" -> "task1.gen_prob",
// "shape" -> "channel.shape".
std::string canonical_key(const std::string& key) {
  const auto& table = setters();
  if (table.count(key)) return key;
  for (const char* section : {"compute.", "channel."}) {
    std::string k = section + key;
    if (table.count(k)) return k;
  }
  if (key.size() > 2 && key[key.size() - 2] == '_' && (key.back() == '1' || key.back() == '2')) {
    std::string k = std::string("task") + key.back() + "." + key.substr(0, key.size() - 2);
    if (table.count(k)) return k;
  }
  return {};
}

}  // namespace

SystemConfig parse_config(const std::string& text, const std::string& origin) {
  SystemConfig config = default_config();
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto cut = raw.find('#');
    std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    auto where = [&] { return origin + ":" + std::to_string(line_no) + ": "; };
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(where() + "unterminated section header '" + line + "'");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where() + "expected key = value, got '" + line + "'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    if (key.empty()) throw ParseError(where() + "empty key");
    std::string canon = canonical_key(key);
    if (canon.empty()) throw ParseError(where() + "unknown key '" + key + "'");
    if (value.empty()) throw ParseError(where() + "missing value for key '" + key + "'");
    try {
      setters().at(canon).apply(config, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where() + "invalid value '" + value + "' for key '" + key + "' (" + e.what() + ")");
    }
  }
  return config;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  SystemConfig config = parse_config(buf.str(), path.string());
  auto report = validate(config);
  if (!report.valid()) {
    std::string msg = path.string() + ": invalid configuration:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  return config;
}

std::string to_config_text(const SystemConfig& c) {
  std::ostringstream out;
  for (int cls : {1, 2}) {
    const auto& t = c.task(cls);
    out << "[task" << cls << "]\n"
        << "gen_prob = " << fmt_double(t.gen_prob) << "\n"
        << "admit_prob = " << fmt_double(t.admit_prob) << "\n"
        << "tx_power = " << fmt_double(t.tx_power) << "\n"
        << "units_required = " << t.units_required << "\n"
        << "service_slots = " << t.service_slots << "\n"
        << "downlink_delay = " << fmt_double(t.downlink_delay) << "\n"
        << "penalty = " << fmt_double(t.penalty) << "\n\n";
  }
  out << "[channel]\n"
      << "shape = " << fmt_double(c.channel.shape) << "\n"
      << "pathloss_exp = " << fmt_double(c.channel.pathloss_exp) << "\n"
      << "distance = " << fmt_double(c.channel.distance) << "\n"
      << "noise_power = " << fmt_double(c.channel.noise_power) << "\n"
      << "snr_threshold = " << fmt_double(c.channel.snr_threshold) << "\n\n"
      << "[compute]\n"
      << "capacity = " << c.compute.capacity << "\n\n"
      << "[]\n"
      << "energy_rate = " << (c.energy_rate ? fmt_double(*c.energy_rate) : std::string("none")) << "\n"
      << "sim_slots = " << c.sim_slots << "\n"
      << "rng_seed = " << c.rng_seed << "\n";
  return out.str();
}

void save_config(const SystemConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write config file: " + path.string());
  out << to_config_text(config);
}

std::string config_hash(const SystemConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : to_config_text(config)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  auto [ptr, ec] = std::to_chars(buf, buf + 16, h, 16);
  std::string s(buf, ptr);
  return std::string(16 - s.size(), '0') + s;
}

}  // namespace wncs
