#include "wncs/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "wncs/analysis.hpp"
#include "wncs/error.hpp"
#include "wncs/metrics.hpp"
#include "wncs/parallel.hpp"

namespace wncs::pareto {

std::vector<double> GridSpec::powers() const {
  if (power_levels < 1 || !(power_min > 0.0) || !(power_max >= power_min))
    throw ValidationError("grid: need power_levels >= 1 and 0 < power_min <= power_max");
  std::vector<double> out(static_cast<std::size_t>(power_levels));
  if (power_levels == 1) {
    out[0] = power_min;
    return out;
  }
  const double lo = std::log10(power_min);
  const double step = (std::log10(power_max) - lo) / (power_levels - 1);
  for (int i = 0; i < power_levels; ++i) out[i] = std::pow(10.0, lo + step * i);
  out.back() = power_max;
  return out;
}

std::vector<double> GridSpec::etas() const {
  if (eta_levels < 1) throw ValidationError("grid: need eta_levels >= 1");
  std::vector<double> out(static_cast<std::size_t>(eta_levels));
  for (int k = 1; k <= eta_levels; ++k) out[k - 1] = static_cast<double>(k) / eta_levels;
  return out;
}

bool energy_feasible(const SystemConfig& config, const Decision& d) {
  if (!config.energy_rate) return true;
  const double draw = config.task1.gen_prob * d.eta1 * d.p_t1 + config.task2.gen_prob * d.eta2 * d.p_t2;
  return draw <= *config.energy_rate * (1.0 + 1e-12);
}

DecisionPoint evaluate_point(const Decision& d, const SystemConfig& config, Engine engine) {
  if (!(d.eta1 > 0.0 && d.eta1 <= 1.0 && d.eta2 > 0.0 && d.eta2 <= 1.0))
    throw ValidationError("decision: admission probabilities must lie in (0, 1]");
  if (!(d.p_t1 > 0.0 && d.p_t2 > 0.0)) throw ValidationError("decision: transmit powers must be > 0");
  SystemConfig c = config;
  c.task1.tx_power = d.p_t1;
  c.task2.tx_power = d.p_t2;
  c.task1.admit_prob = d.eta1;
  c.task2.admit_prob = d.eta2;
  const MetricsReport m = analyze(c, engine);
  return {d, energy_feasible(config, d), m.coma, m.aoa[0], engine};
}

bool dominates(const DecisionPoint& b, const DecisionPoint& a) {
  return b.coma <= a.coma && b.aoa1 <= a.aoa1 && (b.coma < a.coma || b.aoa1 < a.aoa1);
}

std::vector<DecisionPoint> extract_front(std::span<const DecisionPoint> points) {
  std::vector<DecisionPoint> pool;
  for (const auto& p : points) {
    if (p.feasible && !is_unbounded(p.aoa1) && !std::isnan(p.aoa1) && !std::isnan(p.coma)) pool.push_back(p);
  }
  std::sort(pool.begin(), pool.end(), [](const DecisionPoint& a, const DecisionPoint& b) {
    return std::tie(a.aoa1, a.coma, a.decision) < std::tie(b.aoa1, b.coma, b.decision);
  });
  std::vector<DecisionPoint> front;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pool) {
    if (p.coma < best) {
      front.push_back(p);
      best = p.coma;
    }
  }
  return front;
}

ParetoFront search(const SystemConfig& config, const GridSpec& grid, Engine engine, unsigned workers) {
  const auto powers = grid.powers();
  const auto etas = grid.etas();
  const std::size_t np = powers.size();
  const std::size_t ne = etas.size();

  std::vector<Decision> decisions;
  decisions.reserve(np * np * ne * ne);
  for (double p1 : powers)
    for (double p2 : powers)
      for (double e1 : etas)
        for (double e2 : etas) decisions.push_back({p1, p2, e1, e2});

  std::vector<Decision> baseline;
  for (double p : powers)
    for (double e : etas) baseline.push_back({p, p, e, e});

  ParetoFront out;
  out.points.resize(decisions.size());
  out.baseline.resize(baseline.size());
  parallel_for(decisions.size() + baseline.size(), workers, [&](std::size_t i) {
    if (i < decisions.size()) {
      out.points[i] = evaluate_point(decisions[i], config, engine);
    } else {
      const std::size_t j = i - decisions.size();
      out.baseline[j] = evaluate_point(baseline[j], config, engine);
    }
  });

  out.feasible_count = static_cast<std::size_t>(
      std::count_if(out.points.begin(), out.points.end(), [](const DecisionPoint& p) { return p.feasible; }));
  out.front = extract_front(out.points);
  for (const auto& b : out.baseline) {
    if (!b.feasible || std::isnan(b.coma)) continue;
    if (!out.baseline_best || std::tie(b.coma, b.aoa1, b.decision) <
                                  std::tie(out.baseline_best->coma, out.baseline_best->aoa1,
                                           out.baseline_best->decision)) {
      out.baseline_best = b;
    }
  }
  return out;
}

}  // namespace wncs::pareto
