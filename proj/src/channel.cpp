#include "wncs/channel.hpp"

#include <cmath>
#include <limits>

#include "wncs/error.hpp"

namespace wncs {

namespace {

constexpr double kRelTol = 1e-12;
constexpr int kMaxIter = 10000;

// P(a, x) by the power series x^a e^-x / Gamma(a+1) * sum x^n / (a+1)...(a+n).
double series_p(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kRelTol) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction.
double fraction_q(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kRelTol) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw ValidationError("gamma_p: shape must be > 0");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < a + 1.0 ? series_p(a, x) : 1.0 - fraction_q(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw ValidationError("gamma_q: shape must be > 0");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return x < a + 1.0 ? 1.0 - series_p(a, x) : fraction_q(a, x);
}

double fading_threshold(const ChannelParams& channel, double tx_power) {
  if (!(tx_power > 0.0)) throw ValidationError("fading_threshold: transmit power must be > 0");
  if (std::isinf(tx_power)) return 0.0;
  return channel.snr_threshold * channel.noise_power * std::pow(channel.distance, channel.pathloss_exp) /
         tx_power;
}

double uplink_success_prob(const ChannelParams& channel, double tx_power) {
  const double psi = fading_threshold(channel, tx_power);
  return gamma_q(channel.shape, channel.shape * psi);
}

UplinkResult uplink(const ChannelParams& channel, double tx_power) {
  const double psi = fading_threshold(channel, tx_power);
  return {psi, gamma_q(channel.shape, channel.shape * psi)};
}

}  // namespace wncs
