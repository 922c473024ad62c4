#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wncs/config.hpp"

namespace wncs::sim {

enum class ServiceMode { deterministic, geometric };
// pre: an arrival sees the occupancy before same-slot departures (matches
// the analytic chains). post: departures are released first.
enum class DepartureSemantics { pre, post };
// bernoulli: success w.p. p_u. fading: draw |h|^2 ~ Gamma(m, 1/m) and
// compare with psi. ideal: every transmission succeeds.
enum class UplinkMode { bernoulli, fading, ideal };

const char* to_string(ServiceMode m);
const char* to_string(DepartureSemantics d);
const char* to_string(UplinkMode u);

struct SimOptions {
  ServiceMode service = ServiceMode::deterministic;
  DepartureSemantics departures = DepartureSemantics::pre;
  UplinkMode uplink = UplinkMode::bernoulli;
  int batches = 20;
  std::int64_t warmup = 10'000;  // clamped to a tenth of the horizon
  std::optional<std::int64_t> slots;   // overrides config.sim_slots
  std::optional<std::uint64_t> seed;   // overrides config.rng_seed
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct ClassCounts {
  std::int64_t generated = 0;
  std::int64_t rejected = 0;         // failed the admission-control gate
  std::int64_t uplink_lost = 0;
  std::int64_t compute_blocked = 0;
  std::int64_t executed = 0;
  std::int64_t in_flight = 0;        // still computing at the horizon

  bool balanced() const {
    return generated == rejected + uplink_lost + compute_blocked + executed + in_flight;
  }
};

// Over the post-warmup window unless noted. Standard errors come from batch
// means.
struct SimResult {
  std::array<Estimate, 2> aoa;       // includes the D_T offset
  Estimate coma;
  // Fraction of tasks reaching the controller that found too few free units.
  std::array<Estimate, 2> blocking;
  // Fraction of slots in which a class-i arrival would have been blocked
  // (1 - P(Gamma >= N_i) sampled on the occupancy process).
  std::array<Estimate, 2> blocking_slots;
  Estimate aoi;
  std::array<Estimate, 2> uplink_success;  // among attempted transmissions
  std::array<ClassCounts, 2> counts;       // whole run, warmup included
  std::int64_t slots = 0;
  std::int64_t warmup = 0;
  std::uint64_t seed = 0;
  ServiceMode service = ServiceMode::deterministic;
  DepartureSemantics departures = DepartureSemantics::pre;
  UplinkMode uplink = UplinkMode::bernoulli;
  int max_occupancy = 0;
  std::string slot_convention;
};

// Generation and uplink occupy slot t; compute holds the units for the
// following service slots; the command executes at the start of the slot
// after service ends; ages are sampled at each slot start after that slot's
// executions; D_T is added to the time-average AoA as a constant.
inline constexpr const char* kSlotConvention = "gen@t;compute@t+1..t+D;exec@t+D+1;sample-after-exec;+D_T";

SimResult run(const SystemConfig& config, const SimOptions& options = {});

// CSV schema shared by every run row.
std::string csv_header();
std::string csv_row(const SimResult& r);

}  // namespace wncs::sim
