#include "hetcache/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "hetcache/rng.hpp"
#include "hetcache/special_fn.hpp"

namespace hetcache {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::fabs(z - z1) > 3e-15);
    x[i - 1] = -z;
    x[n - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - i] = w[i - 1];
  }
}

// Weighted spatial nodes of one serving region with the per-node channel
// constants the CCDF integrand needs. Weights are signed for the macro
// region (pico holes subtract) and sum to the region area.
struct RegionNodes {
  std::vector<double> weight;
  std::vector<double> noise_x;            // sigma^2 d_m(xi)^alpha / P_m
  std::vector<std::vector<double>> rho;   // per interferer n: P_n d_n^-a / (P_m d_m^-a)
  double area = 0.0;                      // analytic area, normalizes the average
  double abs_weight_sum = 0.0;
  double min_noise_x = 0.0;
};

// Polar tensor grid on a disk: Gauss-Legendre in radius, uniform in angle
// (the integrand is periodic there).
void add_disk_nodes(const NetworkScenario& scn, int serving_bs, Vec2 center, double radius,
                    int n_rad, int n_ang, double sign, RegionNodes& out) {
  std::vector<double> gx, gw;
  gauss_legendre(n_rad, gx, gw);
  const int M = scn.picos();
  const double alpha = scn.pathloss_exponent;
  const double p_serv = scn.tx_power_w[serving_bs];
  for (int i = 0; i < n_rad; ++i) {
    double r = radius * 0.5 * (gx[i] + 1.0);
    double wr = radius * 0.5 * gw[i] * r;  // includes the polar Jacobian
    for (int j = 0; j < n_ang; ++j) {
      double theta = 2.0 * std::numbers::pi * (j + 0.5) / n_ang;
      Vec2 p{center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
      double d_serv = serving_bs == 0 ? distance(p, {0.0, 0.0})
                                      : distance(p, scn.pico_position_m[serving_bs - 1]);
      double serv_gain = p_serv * std::pow(d_serv, -alpha);
      out.weight.push_back(sign * wr * 2.0 * std::numbers::pi / n_ang);
      out.noise_x.push_back(scn.noise_power_w / serv_gain);
      int slot = 0;
      for (int n = 0; n <= M; ++n) {
        if (n == serving_bs) continue;
        double d_n =
            n == 0 ? distance(p, {0.0, 0.0}) : distance(p, scn.pico_position_m[n - 1]);
        double gain_n = scn.tx_power_w[n] * std::pow(d_n, -alpha);
        out.rho[slot++].push_back(gain_n / serv_gain);
      }
    }
  }
}

RegionNodes build_region_nodes(const NetworkScenario& scn, int bs, const QuadSpec& spec,
                               int level) {
  RegionNodes nodes;
  // Every one of the other M stations interferes, whoever serves.
  nodes.rho.assign(static_cast<size_t>(scn.picos()), {});
  const int n_rad = spec.base_radial << level;
  const int n_ang = spec.base_angular << level;
  if (bs >= 1) {
    add_disk_nodes(scn, bs, scn.pico_position_m[bs - 1], scn.pico_radius_m[bs - 1], n_rad,
                   n_ang, +1.0, nodes);
  } else {
    // Macro disk minus every pico disk; hole grids use the finer pico scale.
    add_disk_nodes(scn, 0, {0.0, 0.0}, scn.macro_radius_m, 2 * n_rad, 2 * n_ang, +1.0, nodes);
    for (int m = 0; m < scn.picos(); ++m)
      add_disk_nodes(scn, 0, scn.pico_position_m[m], scn.pico_radius_m[m], n_rad, n_ang, -1.0,
                     nodes);
  }
  nodes.area = scn.region_area_m2(bs);
  nodes.min_noise_x = std::numeric_limits<double>::infinity();
  for (double x : nodes.noise_x) nodes.min_noise_x = std::min(nodes.min_noise_x, x);
  for (double w : nodes.weight) nodes.abs_weight_sum += std::fabs(w);
  return nodes;
}

// P[Rbar > r] on the fixed node set: average of
// exp(-t x(xi)) * prod_n 1/(t rho_n(xi) + 1), t = 2^r - 1.
double ccdf_on_nodes(const RegionNodes& nodes, double rate) {
  const double t = std::exp2(rate) - 1.0;
  const size_t count = nodes.weight.size();
  const size_t interferers = nodes.rho.size();
  double acc = 0.0;
  for (size_t k = 0; k < count; ++k) {
    double v = std::exp(-t * nodes.noise_x[k]);
    for (size_t n = 0; n < interferers; ++n) v /= t * nodes.rho[n][k] + 1.0;
    acc += nodes.weight[k] * v;
  }
  return acc / nodes.area;
}

double gl_panel(const RegionNodes& nodes, double lo, double hi, const std::vector<double>& gx,
                const std::vector<double>& gw) {
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (size_t i = 0; i < gx.size(); ++i)
    acc += gw[i] * ccdf_on_nodes(nodes, mid + half * gx[i]);
  return acc * half;
}

double integrate_panel(const RegionNodes& nodes, double lo, double hi, double rtol, int depth,
                       const std::vector<double>& g16x, const std::vector<double>& g16w,
                       const std::vector<double>& g32x, const std::vector<double>& g32w) {
  double coarse = gl_panel(nodes, lo, hi, g16x, g16w);
  double fine = gl_panel(nodes, lo, hi, g32x, g32w);
  if (std::fabs(fine - coarse) <= rtol * std::max(std::fabs(fine), 1e-300) || depth >= 8)
    return fine;
  double mid = 0.5 * (lo + hi);
  return integrate_panel(nodes, lo, mid, rtol, depth + 1, g16x, g16w, g32x, g32w) +
         integrate_panel(nodes, mid, hi, rtol, depth + 1, g16x, g16w, g32x, g32w);
}

// Layer-cake E[Rbar] = int_0^inf CCDF(r) dr over unit panels, truncated once
// the noise-decay tail bound is negligible. For r >= R the discrete CCDF is
// bounded by c*exp(-(2^r-1)x_min), and 2^r-1 >= (2^R-1) + ln2 2^R (r-R), so
// the tail integral is below c*exp(-(2^R-1)x_min)/(ln2 2^R x_min).
double rate_expectation(const RegionNodes& nodes, const QuadSpec& spec) {
  static thread_local std::vector<double> g16x, g16w, g32x, g32w;
  if (g16x.empty()) {
    gauss_legendre(16, g16x, g16w);
    gauss_legendre(32, g32x, g32w);
  }
  const double bound_scale = nodes.abs_weight_sum / nodes.area;
  double total = 0.0;
  for (int k = 0; k < spec.max_panels; ++k) {
    double lo = static_cast<double>(k), hi = lo + 1.0;
    total += integrate_panel(nodes, lo, hi, spec.rate_panel_rtol, 0, g16x, g16w, g32x, g32w);
    double ex = (std::exp2(hi) - 1.0) * nodes.min_noise_x;
    if (ex > 700.0) break;
    double tail = bound_scale * std::exp(-ex) / (kLn2 * std::exp2(hi) * nodes.min_noise_x);
    if (tail <= spec.tail_rtol * total) break;
  }
  return total;
}

}  // namespace

double fronthaul_coefficient(double macro_power_w, double distance_m, double pathloss_exponent,
                             double noise_power_w) {
  if (!(macro_power_w > 0.0) || !(distance_m > 0.0) || !(pathloss_exponent > 0.0) ||
      !(noise_power_w > 0.0))
    throw std::domain_error("fronthaul_coefficient: arguments must be positive");
  double x = noise_power_w / (macro_power_w * std::pow(distance_m, -pathloss_exponent));
  return kLn2 / exp_integral_E1_scaled(x);
}

double access_rate_ccdf(const NetworkScenario& scn, int bs, double rate, int level) {
  QuadSpec spec;
  RegionNodes nodes = build_region_nodes(scn, bs, spec, level);
  return ccdf_on_nodes(nodes, rate);
}

double access_coefficient(const NetworkScenario& scn, int bs, const QuadSpec& spec) {
  double prev = 0.0;
  double achieved = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= spec.max_levels; ++level) {
    RegionNodes nodes = build_region_nodes(scn, bs, spec, level);
    double value = rate_expectation(nodes, spec);
    if (level > 0) {
      achieved = std::fabs(value - prev) / std::max(std::fabs(value), 1e-300);
      if (achieved <= spec.spatial_rtol) {
        double kappa =
            truncated_poisson_inverse_mean(scn.user_density_per_m2 * scn.region_area_m2(bs));
        return 1.0 / (kappa * value);
      }
    }
    prev = value;
  }
  std::ostringstream os;
  os << "access_coefficient: spatial quadrature for BS " << bs
     << " did not reach rtol=" << spec.spatial_rtol;
  throw NumericError(os.str(), achieved);
}

namespace {

Vec2 sample_point_in_region(const NetworkScenario& scn, int bs, Rng& rng) {
  if (bs >= 1) {
    double r = scn.pico_radius_m[bs - 1] * std::sqrt(rng.next_double());
    double theta = 2.0 * std::numbers::pi * rng.next_double();
    const Vec2& c = scn.pico_position_m[bs - 1];
    return {c.x + r * std::cos(theta), c.y + r * std::sin(theta)};
  }
  for (;;) {
    double r = scn.macro_radius_m * std::sqrt(rng.next_double());
    double theta = 2.0 * std::numbers::pi * rng.next_double();
    Vec2 p{r * std::cos(theta), r * std::sin(theta)};
    bool inside_pico = false;
    for (int m = 0; m < scn.picos() && !inside_pico; ++m)
      inside_pico = distance(p, scn.pico_position_m[m]) < scn.pico_radius_m[m];
    if (!inside_pico) return p;
  }
}

}  // namespace

McEstimate mc_access_coefficient(const NetworkScenario& scn, int bs, long long samples,
                                 uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_access_coefficient: samples must be >= 1");
  Rng rng = Rng::substream(seed, 0xacc0000ull + static_cast<uint64_t>(bs));
  const int M = scn.picos();
  const double alpha = scn.pathloss_exponent;
  const double mean_users = scn.user_density_per_m2 * scn.region_area_m2(bs);

  double sum_inv_u = 0.0, sumsq_inv_u = 0.0;
  double sum_rate = 0.0, sumsq_rate = 0.0;
  for (long long it = 0; it < samples; ++it) {
    double inv_u = 1.0 / static_cast<double>(truncated_poisson_sample(rng, mean_users));
    Vec2 p = sample_point_in_region(scn, bs, rng);
    double signal = 0.0, interference = 0.0;
    for (int n = 0; n <= M; ++n) {
      double d = n == 0 ? distance(p, {0.0, 0.0}) : distance(p, scn.pico_position_m[n - 1]);
      double recv = scn.tx_power_w[n] * rng.next_exp() * std::pow(d, -alpha);
      if (n == bs)
        signal = recv;
      else
        interference += recv;
    }
    double rate = std::log2(1.0 + signal / (scn.noise_power_w + interference));
    sum_inv_u += inv_u;
    sumsq_inv_u += inv_u * inv_u;
    sum_rate += rate;
    sumsq_rate += rate * rate;
  }
  const double n = static_cast<double>(samples);
  double mean_inv_u = sum_inv_u / n;
  double mean_rate = sum_rate / n;
  double var_inv_u = std::max(0.0, sumsq_inv_u / n - mean_inv_u * mean_inv_u) / n;
  double var_rate = std::max(0.0, sumsq_rate / n - mean_rate * mean_rate) / n;

  McEstimate est;
  est.value = 1.0 / (mean_inv_u * mean_rate);
  // Delta method on the product of the two independent means.
  est.std_error = est.value * std::sqrt(var_inv_u / (mean_inv_u * mean_inv_u) +
                                        var_rate / (mean_rate * mean_rate));
  est.samples = samples;
  est.seed = seed;
  return est;
}

McEstimate mc_fronthaul_rate(double x, long long samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_fronthaul_rate: samples must be >= 1");
  if (!(x > 0.0)) throw std::domain_error("mc_fronthaul_rate: x must be > 0");
  Rng rng = Rng::substream(seed, 0xf407ull);
  double sum = 0.0, sumsq = 0.0;
  for (long long it = 0; it < samples; ++it) {
    double rate = std::log2(1.0 + rng.next_exp() / x);
    sum += rate;
    sumsq += rate * rate;
  }
  const double n = static_cast<double>(samples);
  McEstimate est;
  est.value = sum / n;
  est.std_error = std::sqrt(std::max(0.0, sumsq / n - est.value * est.value) / n);
  est.samples = samples;
  est.seed = seed;
  return est;
}

DelayCoefficients compute_coefficients(const NetworkScenario& scn, const QuadSpec& spec) {
  DelayCoefficients coeffs;
  const int M = scn.picos();
  coeffs.access.resize(M + 1);
  coeffs.fronthaul.resize(M);
  for (int bs = 0; bs <= M; ++bs) {
    try {
      coeffs.access[bs] = access_coefficient(scn, bs, spec);
    } catch (const NumericError& e) {
      std::ostringstream os;
      os << "BS " << bs << ": " << e.what();
      throw NumericError(os.str(), e.achieved_tolerance);
    }
  }
  for (int bs = 1; bs <= M; ++bs)
    coeffs.fronthaul[bs - 1] =
        fronthaul_coefficient(scn.tx_power_w[0], scn.fronthaul_distance_m(bs),
                              scn.pathloss_exponent, scn.noise_power_w);
  return coeffs;
}

}  // namespace hetcache
