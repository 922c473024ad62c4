#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wncs/config.hpp"
#include "wncs/queue_model.hpp"

namespace wncs::pareto {

struct Decision {
  double p_t1 = 0.0;
  double p_t2 = 0.0;
  double eta1 = 1.0;
  double eta2 = 1.0;

  auto operator<=>(const Decision&) const = default;
};

struct DecisionPoint {
  Decision decision;
  bool feasible = false;  // g1 eta1 P1 + g2 eta2 P2 <= E/T
  double coma = 0.0;
  double aoa1 = 0.0;
  Engine engine = Engine::geo_mg;
};

// Power levels log-spaced in [power_min, power_max]; admission levels
// k / eta_levels for k = 1..eta_levels.
struct GridSpec {
  int power_levels = 20;
  double power_min = 1e-3;
  double power_max = 1.0;
  int eta_levels = 20;

  std::vector<double> powers() const;
  std::vector<double> etas() const;
};

struct ParetoFront {
  std::vector<DecisionPoint> points;    // every evaluated grid point, grid order
  std::vector<DecisionPoint> front;     // ascending aoa1, descending coma
  std::vector<DecisionPoint> baseline;  // eta1 = eta2, P1 = P2 family, grid order
  // Minimum-CoMA feasible baseline point (ties: smaller aoa1, then decision).
  std::optional<DecisionPoint> baseline_best;
  std::size_t feasible_count = 0;
};

// Budget check with a 1e-12 relative allowance so that points on the
// boundary count as feasible.
bool energy_feasible(const SystemConfig& config, const Decision& d);

// Throws ValidationError outside eta in (0, 1], P > 0.
DecisionPoint evaluate_point(const Decision& d, const SystemConfig& config, Engine engine);

// Non-dominated subset by sort-and-scan. Points with unbounded aoa1 are
// excluded; exact ties keep the lexicographically smallest decision.
std::vector<DecisionPoint> extract_front(std::span<const DecisionPoint> points);

// b dominates a: no worse in both objectives, strictly better in one.
bool dominates(const DecisionPoint& b, const DecisionPoint& a);

// Evaluates the full grid (workers threads; 0 = hardware concurrency) and
// the baseline family. Results do not depend on the worker count.
ParetoFront search(const SystemConfig& config, const GridSpec& grid, Engine engine = Engine::geo_mg,
                   unsigned workers = 0);

}  // namespace wncs::pareto
