#include "hetcache/solver_joint.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hetcache/delay.hpp"
#include "hetcache/solver_fixed_bw.hpp"

namespace hetcache {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double weighted_uncached_bits(const FileCatalog& catalog, std::span<const double> row) {
  double sum = 0.0;
  for (int f = 0; f < catalog.files(); ++f)
    sum += catalog.popularity[f] * catalog.length_bits[f] * (1.0 - row[f]);
  return sum;
}

double access_sqrt_term(const DelayCoefficients& coeffs, const FileCatalog& catalog) {
  double ql_total = 0.0;
  for (int f = 0; f < catalog.files(); ++f)
    ql_total += catalog.popularity[f] * catalog.length_bits[f];
  double a_sum = 0.0;
  for (double a : coeffs.access) a_sum += a;
  return std::sqrt(ql_total * a_sum);
}

double horner(const std::array<double, 6>& z, double x) {
  double v = 0.0;
  for (int k = 5; k >= 0; --k) v = v * x + z[k];
  return v;
}

double horner_derivative(const std::array<double, 6>& z, double x) {
  double v = 0.0;
  for (int k = 5; k >= 1; --k) v = v * x + k * z[k];
  return v;
}

// |p| scale at x for the relative residual test.
double eval_scale(const std::array<double, 6>& z, double x) {
  double scale = 0.0, xp = 1.0;
  for (int k = 0; k <= 5; ++k) {
    scale += std::fabs(z[k]) * xp;
    xp *= std::fabs(x);
  }
  return std::max(scale, 1e-300);
}

}  // namespace

BandwidthAllocation optimal_bandwidth(const DelayCoefficients& coeffs,
                                      const FileCatalog& catalog,
                                      const CachePlacement& placement,
                                      double total_bandwidth_hz) {
  if (!(total_bandwidth_hz > 0.0))
    throw std::domain_error("optimal_bandwidth: total bandwidth must be > 0");
  const int M = placement.picos;
  double a = access_sqrt_term(coeffs, catalog);
  std::vector<double> v(M);
  double denom = a;
  for (int m = 0; m < M; ++m) {
    v[m] = std::sqrt(std::max(coeffs.b(m + 1) * weighted_uncached_bits(catalog, placement.row(m)),
                              0.0));
    denom += v[m];
  }
  BandwidthAllocation alloc;
  alloc.w.assign(M + 1, 0.0);
  double picos_total = 0.0;
  for (int m = 0; m < M; ++m) {
    alloc.w[m + 1] = v[m] * total_bandwidth_hz / denom;
    picos_total += alloc.w[m + 1];
  }
  // w_0 takes the subtraction remainder. total() re-accumulates the picos in
  // this same order and adds w_0 last, so p + fl(W - p) rounds back to W
  // exactly (the subtraction error is strictly below half an ulp of W).
  alloc.w[0] = std::max(total_bandwidth_hz - picos_total, 0.0);
  return alloc;
}

QuinticCoefficients quintic_coefficients(const FileCatalog& catalog, double capacity_bits,
                                         double b, double buffer_delay_s,
                                         double total_bandwidth_hz, double u, int file_index) {
  if (!(u > 0.0)) throw std::domain_error("quintic_coefficients: u must be > 0");
  double prefix = 0.0;
  for (int l = 0; l < file_index; ++l) prefix += catalog.length_bits[l];
  if (prefix > capacity_bits * (1.0 + 1e-9))
    throw ConstraintError("quintic_coefficients: prefix exceeds capacity");

  const double q = catalog.popularity[file_index];
  const double L = catalog.length_bits[file_index];
  const double w_f = catalog.tail_weighted_bits(file_index);
  const double beta = q * (capacity_bits - prefix) - w_f;

  QuinticCoefficients out;
  const double z5 = b * q * L;
  out.z[5] = z5;
  out.z[4] = z5 * u;
  out.z[3] = 2.0 * b * beta * z5;
  out.z[2] = 2.0 * b * beta * z5 * u;
  out.z[1] = z5 * (b * b * beta * beta + buffer_delay_s * total_bandwidth_hz * b * q * beta);
  out.z[0] = z5 * b * b * beta * beta * u;
  return out;
}

std::vector<double> real_roots_in_interval(const QuinticCoefficients& q, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("real_roots_in_interval: empty interval");
  std::vector<double> roots;

  double max_coeff = 0.0;
  for (double z : q.z) max_coeff = std::max(max_coeff, std::fabs(z));
  if (max_coeff == 0.0) return roots;

  int degree = 5;
  while (degree > 0 && std::fabs(q.z[degree]) < 1e-14 * max_coeff) --degree;
  if (degree == 0) return roots;

  // Companion matrix of the monic polynomial; eigenvalues are the roots.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -q.z[i] / q.z[degree];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);

  const double width = hi - lo;
  for (int i = 0; i < degree; ++i) {
    std::complex<double> ev = solver.eigenvalues()[i];
    if (std::fabs(ev.imag()) > 1e-6 * (1.0 + std::fabs(ev.real()))) continue;
    double x = ev.real();
    // Newton polish (a few safeguarded steps).
    for (int it = 0; it < 6; ++it) {
      double p = horner(q.z, x);
      double dp = horner_derivative(q.z, x);
      if (dp == 0.0) break;
      double step = p / dp;
      if (!std::isfinite(step)) break;
      x -= step;
      if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
    }
    if (!(x > lo && x < hi)) continue;
    if (std::fabs(horner(q.z, x)) > 1e-9 * eval_scale(q.z, x)) continue;
    bool duplicate = false;
    for (double r : roots) duplicate |= std::fabs(r - x) <= 1e-10 * width;
    if (!duplicate) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Reduced objective restricted to pico m's prefix row with leading index f:
// (u + sqrt(b(w_f - q L s)))^2 / W + D(w_f - q L s)/(C - prefix - L s).
double y_value(double u, double b, double w_f, double q, double L, double prefix,
               double capacity_bits, double buffer_delay_s, double total_bandwidth_hz,
               double s) {
  double uncached_ql = std::max(w_f - q * L * s, 0.0);
  double sq = u + std::sqrt(std::max(b * uncached_ql, 0.0));
  double y = sq * sq / total_bandwidth_hz;
  double buffer_num = buffer_delay_s * uncached_ql;
  if (buffer_num > 0.0) {
    double buffer_bits = capacity_bits - prefix - L * s;
    y += buffer_bits > 0.0 ? buffer_num / buffer_bits : kInf;
  }
  return y;
}

}  // namespace

BestResponse best_response(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                           const CachePlacement& placement, int bs, bool restrict_to_range) {
  const FileCatalog& catalog = scn.catalog;
  const int m0 = bs - 1;
  const double capacity = scn.storage_bits[m0];
  const double b = coeffs.b(bs);
  const double D = scn.buffer_delay_s;
  const double W = scn.total_bandwidth_hz;

  double u = access_sqrt_term(coeffs, catalog);
  for (int n = 0; n < placement.picos; ++n) {
    if (n == m0) continue;
    u += std::sqrt(
        std::max(coeffs.b(n + 1) * weighted_uncached_bits(catalog, placement.row(n)), 0.0));
  }

  CandidateRange range = candidate_range(catalog, capacity);
  const int first = restrict_to_range ? range.lo : 0;

  BestResponse best;
  best.objective = kInf;
  double best_y = kInf;
  double best_s = 0.0;
  double best_cached = -1.0;
  bool found = false;

  double prefix = 0.0;
  for (int l = 0; l < first; ++l) prefix += catalog.length_bits[l];
  for (int f = first; f <= range.hi; ++f) {
    const double q = catalog.popularity[f];
    const double L = catalog.length_bits[f];
    const double w_f = catalog.tail_weighted_bits(f);
    const double s_max = std::max(0.0, std::min(1.0, (capacity - prefix) / L));

    double candidates[8];
    int count = 0;
    candidates[count++] = 0.0;
    candidates[count++] = s_max;
    double x_hi = std::sqrt(std::max(b * w_f, 0.0));
    double x_lo = std::sqrt(std::max(b * (w_f - q * L * s_max), 0.0));
    if (x_lo < x_hi) {
      QuinticCoefficients quintic = quintic_coefficients(catalog, capacity, b, D, W, u, f);
      ++best.root_solves;
      for (double x : real_roots_in_interval(quintic, x_lo, x_hi)) {
        double s = (b * w_f - x * x) / (b * q * L);
        candidates[count++] = std::clamp(s, 0.0, s_max);
      }
    }

    for (int c = 0; c < count; ++c) {
      double s = candidates[c];
      double y = y_value(u, b, w_f, q, L, prefix, capacity, D, W, s);
      ++best.candidate_evals;
      double cached = prefix + s * L;
      bool better = !found || y < best_y ||
                    (y == best_y && (cached > best_cached ||
                                     (cached == best_cached && f < best.leading_index)));
      if (better) {
        best_y = y;
        best_s = s;
        best_cached = cached;
        best.leading_index = f;
        found = true;
      }
    }
    prefix += L;
  }
  if (!found || std::isinf(best_y))
    throw NumericError("best_response: every candidate has infinite objective", kInf);

  best.row = prefix_placement(catalog, capacity, best.leading_index, best_s);
  CachePlacement updated = placement;
  updated.set_row(m0, best.row);
  best.objective = reduced_objective(scn, coeffs, updated);
  return best;
}

IcpResult icp(const NetworkScenario& scn, const DelayCoefficients& coeffs,
              const CachePlacement& init, const IcpOptions& opts) {
  const int M = scn.picos();
  if (init.picos != M || init.files != scn.catalog.files())
    throw ConstraintError("icp: init placement shape mismatch");
  for (int m = 0; m < M; ++m)
    if (init.cached_bits(scn.catalog, m) > scn.storage_bits[m] * (1.0 + 1e-9))
      throw ConstraintError("icp: init placement exceeds storage capacity");

  IcpResult result;
  result.placement = init;
  double objective = reduced_objective(scn, coeffs, result.placement);
  result.trace.initial_objective = objective;
  result.trace.status = "max-iterations";

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    IcpIteration iter;
    iter.sweep = sweep;
    iter.row_changed.assign(M, false);
    for (int step = 0; step < M; ++step) {
      int m = opts.descending_order ? M - 1 - step : step;
      BestResponse br =
          best_response(scn, coeffs, result.placement, m + 1, opts.restrict_to_range);
      for (int f = 0; f < scn.catalog.files(); ++f)
        if (br.row[f] != result.placement.at(m, f)) {
          iter.row_changed[m] = true;
          break;
        }
      result.placement.set_row(m, br.row);
      iter.root_solves += br.root_solves;
      iter.candidate_evals += br.candidate_evals;
    }
    double next = reduced_objective(scn, coeffs, result.placement);
    if (next > objective * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "icp: objective rose from " << objective << " to " << next << " in sweep " << sweep;
      throw NumericError(os.str(), (next - objective) / objective);
    }
    double improvement = (objective - next) / std::max(std::fabs(objective), 1e-300);
    iter.objective = next;
    result.trace.iterations.push_back(std::move(iter));
    objective = next;
    if (improvement < opts.tol) {
      result.trace.status = "converged";
      break;
    }
  }

  result.objective = objective;
  result.allocation =
      optimal_bandwidth(coeffs, scn.catalog, result.placement, scn.total_bandwidth_hz);
  return result;
}

IcpResult icp(const NetworkScenario& scn, const DelayCoefficients& coeffs,
              const IcpOptions& opts) {
  return icp(scn, coeffs, CachePlacement::zeros(scn.picos(), scn.catalog.files()), opts);
}

}  // namespace hetcache
