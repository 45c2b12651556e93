#pragma once

namespace hetcache {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008;

// E1(x) = int_x^inf e^-t / t dt, x > 0. Power series below x = 1, modified
// Lentz continued fraction above. Relative accuracy ~1e-14.
double exp_integral_E1(double x);

// e^x * E1(x) without overflow/underflow for large x. This is the quantity
// the fronthaul coefficient actually needs.
double exp_integral_E1_scaled(double x);

// Principal-value exponential integral Ei(x), x > 0. All-positive power
// series up to x = 40, divergent asymptotic series (truncated at its
// smallest term) above.
double exp_integral_Ei(double x);

// E[1/U] for U ~ Poisson(mean) conditioned on U >= 1. Equals
// e^-mean/(1 - e^-mean) * (Ei(mean) - ln(mean) - gamma); evaluated through
// the series sum_k mean^k/(k k!) below mean = 35 to dodge the cancellation,
// through the scaled asymptotic Ei above. Result in (0, 1].
double truncated_poisson_inverse_mean(double mean);

}  // namespace hetcache
