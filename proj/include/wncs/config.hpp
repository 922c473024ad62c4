#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wncs {

// Per-class traffic and resource parameters. Class 1 is the regular task
// stream (one compute unit), class 2 the critical stream (N units).
struct TaskClassParams {
  double gen_prob = 0.0;       // g_i, generation probability per slot
  double admit_prob = 1.0;     // eta_i, admission-control pass probability
  double tx_power = 0.05;      // P_T,i in watts
  int units_required = 1;      // N_i
  int service_slots = 10;      // D_C,i
  double downlink_delay = 0.1; // D_T,i in (possibly fractional) slots
  double penalty = 1.0;        // omega_i

  bool operator==(const TaskClassParams&) const = default;
};

// Nakagami-m uplink with power-law path loss. All values linear.
struct ChannelParams {
  double shape = 1.0;          // m
  double pathloss_exp = 3.0;   // alpha_u
  double distance = 50.0;      // d_u, meters
  double noise_power = 1e-8;   // sigma^2, watts
  double snr_threshold = 3.1622776601683795;  // decoding threshold, linear

  bool operator==(const ChannelParams&) const = default;
};

struct ComputeParams {
  int capacity = 8;  // C

  bool operator==(const ComputeParams&) const = default;
};

struct SystemConfig {
  TaskClassParams task1;
  TaskClassParams task2;
  ChannelParams channel;
  ComputeParams compute;
  std::optional<double> energy_rate;  // E/T in watts
  std::int64_t sim_slots = 1'000'000;
  std::uint64_t rng_seed = 1;

  const TaskClassParams& task(int cls) const { return cls == 1 ? task1 : task2; }
  TaskClassParams& task(int cls) { return cls == 1 ? task1 : task2; }

  bool operator==(const SystemConfig&) const = default;
};

// Defaults reproducing the evaluation setup: C=8, N=4, omega=(1,10),
// g=(0.4,0.1), D_C=10, D_T=0.1, sigma^2=-80 dBW, threshold 5 dB, m=1,
// alpha=3, d=50, E/T=0.18 W. Powers and admission probabilities default to
// P_T=(0.05, 0.2) W and eta=(1, 0.8).
SystemConfig default_config();

struct ValidationReport {
  std::vector<std::string> violations;
  // g1*eta1*P1 + g2*eta2*P2 > E/T. Reportable state, not a violation.
  bool energy_infeasible = false;
  // Classes whose units_required exceed the capacity (never executable).
  std::vector<int> starved_classes;

  bool valid() const { return violations.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate(const SystemConfig& config);

// Average transmit power g1*eta1*P1 + g2*eta2*P2.
double power_draw(const SystemConfig& config);

// Flat key=value format. Keys are dotted (task1.gen_prob, channel.shape);
// "[section]" headers prefix following keys. '#' starts a comment.
// Suffix-free aliases: "capacity" and "<field>_<class>" (gen_prob_1).
// noise_power_db / snr_threshold_db are converted to linear. energy_rate
// accepts "none" to disable the budget. Omitted keys keep default values.
//
// parse_config throws ParseError with line context on malformed input or an
// unknown key. load_config additionally throws ValidationError listing every
// violated invariant.
SystemConfig parse_config(const std::string& text, const std::string& origin = "<string>");
SystemConfig load_config(const std::filesystem::path& path);

// Canonical text form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const SystemConfig& config);
void save_config(const SystemConfig& config, const std::filesystem::path& path);

// FNV-1a over the canonical text, as 16 hex digits.
std::string config_hash(const SystemConfig& config);

double db_to_linear(double db);

}  // namespace wncs
