#include "wncs/erlang.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wncs/kernels.hpp"

namespace wncs::erlang {

ErlangLoad offered_load(const QueueModel& model) {
  return {model.arrive1 * model.service1, model.arrive2 * model.service2};
}

namespace {

// log(rho^n / n!), with 0^0 = 1.
double log_term(double rho, int n) {
  if (n == 0) return 0.0;
  if (rho == 0.0) return -std::numeric_limits<double>::infinity();
  return n * std::log(rho) - std::lgamma(n + 1.0);
}

}  // namespace

geo::SteadyState erlang_steady_state(const ErlangLoad& load, int capacity, int units2, int units1) {
  if (!(load.rho1 >= 0.0) || !(load.rho2 >= 0.0) || !std::isfinite(load.rho1) || !std::isfinite(load.rho2))
    throw std::invalid_argument("erlang_steady_state: loads must be finite and nonnegative");
  geo::SteadyState out;
  out.space = geo::StateSpace(capacity, units1, units2);
  std::vector<double> logw(out.space.size());
  for (std::size_t i = 0; i < logw.size(); ++i) {
    const auto s = out.space.states()[i];
    logw[i] = log_term(load.rho1, s.n1) + log_term(load.rho2, s.n2);
  }
  const double peak = *std::max_element(logw.begin(), logw.end());
  out.probs.resize(logw.size());
  for (std::size_t i = 0; i < logw.size(); ++i) out.probs[i] = std::exp(logw[i] - peak);
  kernels::scale(1.0 / kernels::sum(out.probs), out.probs);
  return out;
}

geo::SteadyState erlang_steady_state(const QueueModel& model) {
  return erlang_steady_state(offered_load(model), model.capacity, model.units2, model.units1);
}

double availability_prob_erlang(const geo::SteadyState& steady, int units_needed) {
  return geo::availability_prob(steady, units_needed);
}

}  // namespace wncs::erlang
