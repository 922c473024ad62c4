#pragma once

#include "wncs/config.hpp"

namespace wncs {

struct UplinkResult {
  double psi = 0.0;           // fading threshold on |h|^2
  double success_prob = 1.0;  // p_u
};

// psi = threshold * sigma^2 * d^alpha / P_T. Throws ValidationError when
// tx_power <= 0.
double fading_threshold(const ChannelParams& channel, double tx_power);

// P(|h|^2 >= psi) for |h|^2 ~ Gamma(m, 1/m), i.e. Q(m, m*psi).
double uplink_success_prob(const ChannelParams& channel, double tx_power);

UplinkResult uplink(const ChannelParams& channel, double tx_power);

// Regularized incomplete gamma functions. Series below x = a + 1, Lentz
// continued fraction above, relative tolerance 1e-12.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

}  // namespace wncs
