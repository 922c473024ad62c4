#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wncs/config.hpp"
#include "wncs/pareto.hpp"
#include "wncs/queue_model.hpp"
#include "wncs/simulator.hpp"

namespace wncs::cli {

inline constexpr const char* kVersion = "0.1.0";

// Flags shared by every subcommand.
struct CommonArgs {
  std::optional<std::filesystem::path> config;
  std::string engine = "geo-mg";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> slots;
  unsigned workers = 0;
};

struct SolveArgs {
  std::optional<std::filesystem::path> dump;  // transition-matrix triplets
};

struct SimulateArgs {
  std::string service = "det";
  std::string departures = "pre";
  std::string uplink = "bernoulli";
};

struct CompareArgs {
  double ratio = 4.0;  // g1 / g2
  int points = 10;
  double g2_min = 0.005;
  double g2_max = 0.095;
  bool channel = false;  // use the fading uplink instead of p_u = 1
  bool simulate = true;
};

struct SweepArgs {
  std::string param = "eta1";
  double from = 0.1;
  double to = 1.0;
  int steps = 10;
  std::vector<std::string> engines{"det", "geo-mg", "erlang"};
  bool simulate = true;
};

struct ParetoArgs {
  pareto::GridSpec grid;
  std::optional<double> energy_rate;
  bool no_budget = false;
};

// Evaluation setting for the queue comparison: C=12, N=4, D_C=(5, 10),
// eta=(1, 1). Used when no --config is given.
SystemConfig comparison_preset();

// Resolves --config (or `fallback`) and applies --seed / --slots.
SystemConfig resolve_config(const CommonArgs& common, const SystemConfig& fallback);

// "# wncs-csv v1 command=... config_hash=... version=..."
std::string csv_preamble(const std::string& command, const SystemConfig& config);

void cmd_solve(const CommonArgs& common, const SolveArgs& args, std::ostream& out);
void cmd_simulate(const CommonArgs& common, const SimulateArgs& args, std::ostream& out);
void cmd_compare(const CommonArgs& common, const CompareArgs& args, std::ostream& out);
void cmd_sweep(const CommonArgs& common, const SweepArgs& args, std::ostream& out);

struct ParetoOutputs {
  std::string points_csv;
  std::string front_csv;
  std::string summary;
  bool empty_feasible = false;
};

ParetoOutputs cmd_pareto(const CommonArgs& common, const ParetoArgs& args);

sim::ServiceMode parse_service(const std::string& s);
sim::DepartureSemantics parse_departures(const std::string& s);
sim::UplinkMode parse_uplink(const std::string& s);

}  // namespace wncs::cli
