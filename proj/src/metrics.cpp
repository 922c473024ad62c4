#include "wncs/metrics.hpp"

namespace wncs {

double task_aoa(double gen_prob, double admit_prob, double uplink, double availability, double service_slots,
                double downlink_delay) {
  const double rate = gen_prob * admit_prob * uplink * availability;
  if (!(rate > 0.0)) return kUnbounded;
  return 1.0 / rate + service_slots + downlink_delay;
}

double coma(const ClassTerms& t1, const ClassTerms& t2) {
  auto term = [](const ClassTerms& t) {
    return t.penalty * t.gen_prob * (1.0 - t.admit_prob * t.uplink * t.availability);
  };
  return term(t1) + term(t2);
}

double aoi_baseline(double g1, double eta1, double pu1, double g2, double eta2, double pu2) {
  const double rate = g1 * eta1 * pu1 + g2 * eta2 * pu2;
  if (!(rate > 0.0)) return kUnbounded;
  return 1.0 / rate;
}

MetricsReport compose_metrics(const SystemConfig& config, const std::array<double, 2>& uplink,
                              const std::array<double, 2>& availability, Engine engine) {
  MetricsReport r;
  r.engine = engine;
  r.uplink = uplink;
  r.availability = availability;
  std::array<ClassTerms, 2> terms;
  for (int i = 0; i < 2; ++i) {
    const auto& t = config.task(i + 1);
    r.aoa[i] = task_aoa(t.gen_prob, t.admit_prob, uplink[i], availability[i], t.service_slots, t.downlink_delay);
    terms[i] = {t.gen_prob, t.admit_prob, uplink[i], availability[i], t.penalty};
  }
  r.coma = coma(terms[0], terms[1]);
  r.aoi = aoi_baseline(config.task1.gen_prob, config.task1.admit_prob, uplink[0], config.task2.gen_prob,
                       config.task2.admit_prob, uplink[1]);
  return r;
}

}  // namespace wncs
