#include "hetcache/special_fn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hetcache {

namespace {

// E1 power series: -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!).
double e1_series(double x) {
  double sum = -kEulerGamma - std::log(x);
  double term = 1.0;  // x^k / k!
  for (int k = 1; k <= 60; ++k) {
    term *= x / k;
    double add = (k % 2 == 1 ? term : -term) / k;
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

// Modified Lentz evaluation of the continued fraction
// e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(x+7- ...)))).
double e1_cf_scaled(double x) {
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k <= 200; ++k) {
    double a = -static_cast<double>(k) * k;
    b += 2.0;
    d = a * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

// Divergent asymptotic series e^-x Ei(x) ~ (1/x) sum_k k!/x^k, truncated at
// the smallest term. Good to ~1e-13 relative for x >= 35.
double ei_scaled_asymptotic(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    double next = term * k / x;
    if (next >= term) break;  // series started diverging
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum / x;
}

// All-positive power series Ei(x) - ln x - gamma = sum_{k>=1} x^k / (k k!).
double ei_series_part(double x) {
  double sum = 0.0;
  double term = 1.0;  // x^k / k!
  for (int k = 1; k <= 400; ++k) {
    term *= x / k;
    double add = term / k;
    sum += add;
    if (add < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

double exp_integral_E1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_E1: x must be > 0");
  if (x <= 1.0) return e1_series(x);
  double scaled = e1_cf_scaled(x);
  if (x > 700.0) return 0.0;  // underflows; scaled form stays available
  return scaled * std::exp(-x);
}

double exp_integral_E1_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_E1_scaled: x must be > 0");
  if (x <= 1.0) return e1_series(x) * std::exp(x);
  return e1_cf_scaled(x);
}

double exp_integral_Ei(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_Ei: x must be > 0");
  if (x <= 40.0) return kEulerGamma + std::log(x) + ei_series_part(x);
  double log_ei = x + std::log(ei_scaled_asymptotic(x));
  if (log_ei > 709.0) return std::numeric_limits<double>::infinity();
  return std::exp(log_ei);
}

double truncated_poisson_inverse_mean(double mean) {
  if (!(mean > 0.0)) throw std::domain_error("truncated_poisson_inverse_mean: mean must be > 0");
  if (mean <= 35.0) {
    // kappa = sum_{k>=1} mean^k/(k k!) / (e^mean - 1); no cancellation.
    return ei_series_part(mean) / std::expm1(mean);
  }
  double scaled_ei = ei_scaled_asymptotic(mean);  // e^-mean Ei(mean)
  double correction = std::exp(-mean) * (std::log(mean) + kEulerGamma);
  return (scaled_ei - correction) / (-std::expm1(-mean));
}

}  // namespace hetcache
