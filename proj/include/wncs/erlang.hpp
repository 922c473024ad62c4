#pragma once

#include "wncs/queue_geo.hpp"

namespace wncs::erlang {

// Offered loads rho_i = a_i / mu_i = a_i * D_C,i.
struct ErlangLoad {
  double rho1 = 0.0;
  double rho2 = 0.0;
};

ErlangLoad offered_load(const QueueModel& model);

// Product-form S(n1, n2) proportional to rho1^n1/n1! * rho2^n2/n2! over the
// same state space as the Geo/Geo chain, normalized in log space.
geo::SteadyState erlang_steady_state(const ErlangLoad& load, int capacity, int units2, int units1 = 1);
geo::SteadyState erlang_steady_state(const QueueModel& model);

double availability_prob_erlang(const geo::SteadyState& steady, int units_needed);

}  // namespace wncs::erlang
