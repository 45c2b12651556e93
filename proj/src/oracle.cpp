#include "hetcache/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hetcache/delay.hpp"
#include "hetcache/solver_fixed_bw.hpp"
#include "hetcache/solver_joint.hpp"

namespace hetcache {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GridScan {
  const NetworkScenario& scn;
  const DelayCoefficients& coeffs;
  int steps;  // grid values are k/steps, k = 0..steps
  // fixed mode
  const BandwidthAllocation* alloc = nullptr;
  // per-row running state
  std::vector<double> cached;
  std::vector<double> uncached_ql;
  double partial = 0.0;  // fixed mode: objective of completed rows
  double best = kInf;
  long long leaves = 0;
  double a = 0.0;  // joint mode access term

  GridScan(const NetworkScenario& s, const DelayCoefficients& c, int n)
      : scn(s), coeffs(c), steps(n) {
    cached.assign(s.picos(), 0.0);
    double ql_total = 0.0;
    for (int f = 0; f < s.catalog.files(); ++f)
      ql_total += s.catalog.popularity[f] * s.catalog.length_bits[f];
    uncached_ql.assign(s.picos(), ql_total);
    double a_sum = 0.0;
    for (double v : c.access) a_sum += v;
    a = std::sqrt(ql_total * a_sum);
  }

  double row_objective_fixed(int m) const {
    double buffer_bits = scn.storage_bits[m] - cached[m];
    double obj = 0.0;
    if (coeffs.b(m + 1) * uncached_ql[m] > 0.0)
      obj += alloc->w[m + 1] > 0.0 ? coeffs.b(m + 1) * uncached_ql[m] / alloc->w[m + 1] : kInf;
    if (scn.buffer_delay_s * uncached_ql[m] > 0.0)
      obj += buffer_bits > 0.0 ? scn.buffer_delay_s * uncached_ql[m] / buffer_bits : kInf;
    return obj;
  }

  double leaf_objective_joint() const {
    double sq = a;
    double buffers = 0.0;
    for (int m = 0; m < scn.picos(); ++m) {
      sq += std::sqrt(std::max(coeffs.b(m + 1) * uncached_ql[m], 0.0));
      if (scn.buffer_delay_s * uncached_ql[m] > 0.0) {
        double buffer_bits = scn.storage_bits[m] - cached[m];
        buffers += buffer_bits > 0.0 ? scn.buffer_delay_s * uncached_ql[m] / buffer_bits : kInf;
      }
    }
    return sq * sq / scn.total_bandwidth_hz + buffers;
  }

  void scan(int dim, bool joint) {
    const int F = scn.catalog.files();
    const int m = dim / F;
    const int f = dim % F;
    const double L = scn.catalog.length_bits[f];
    const double qL = scn.catalog.popularity[f] * L;
    const double cap = scn.storage_bits[m] * (1.0 + 1e-12);
    const double cached0 = cached[m];
    const double uncached0 = uncached_ql[m];
    for (int k = 0; k <= steps; ++k) {
      double s = static_cast<double>(k) / steps;
      cached[m] = cached0 + s * L;
      if (cached[m] > cap) break;  // larger s only gets worse
      uncached_ql[m] = uncached0 - s * qL;
      bool row_done = f == F - 1;
      double saved_partial = partial;
      if (row_done && !joint) partial += row_objective_fixed(m);
      if (dim == scn.picos() * F - 1) {
        ++leaves;
        double value = joint ? leaf_objective_joint() : partial;
        if (value < best) best = value;
      } else {
        scan(dim + 1, joint);
      }
      partial = saved_partial;
    }
    cached[m] = cached0;
    uncached_ql[m] = uncached0;
  }
};

int check_budget(const NetworkScenario& scn, double step, const GridBudget& budget) {
  const int M = scn.picos();
  const int F = scn.catalog.files();
  if (M > budget.max_picos || F > budget.max_files) {
    std::ostringstream os;
    os << "grid oracle refused: M=" << M << " F=" << F << " exceeds budget (M<="
       << budget.max_picos << ", F<=" << budget.max_files << ")";
    throw ConstraintError(os.str());
  }
  if (!(step > 0.0) || step > budget.max_step * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "grid oracle refused: step " << step << " coarser than " << budget.max_step;
    throw ConstraintError(os.str());
  }
  int steps = static_cast<int>(std::lround(1.0 / step));
  double points = std::pow(static_cast<double>(steps) + 1.0, M * F);
  if (points > budget.max_points) {
    std::ostringstream os;
    os << "grid oracle refused: " << points << " grid points exceed budget "
       << budget.max_points;
    throw ConstraintError(os.str());
  }
  return steps;
}

}  // namespace

OracleReport grid_search_oracle_fixed(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                                      const BandwidthAllocation& alloc, double step,
                                      const GridBudget& budget) {
  int steps = check_budget(scn, step, budget);
  CachePlacement solved = solve_all_fixed_bw(scn, coeffs, alloc);
  double solver_obj = fixed_bw_objective(scn, coeffs, solved, alloc);

  GridScan grid(scn, coeffs, steps);
  grid.alloc = &alloc;
  grid.scan(0, /*joint=*/false);

  OracleReport report;
  std::ostringstream os;
  os << "fixed-bw M=" << scn.picos() << " F=" << scn.catalog.files() << " step=1/" << steps;
  report.instance = os.str();
  report.solver_objective = solver_obj;
  report.oracle_objective = grid.best;
  report.relative_gap = (grid.best - solver_obj) / std::max(std::fabs(solver_obj), 1e-300);
  report.structure_ok = structure_ok(solved);
  report.points_scanned = grid.leaves;
  return report;
}

OracleReport grid_search_oracle_joint(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                                      double step, const GridBudget& budget) {
  int steps = check_budget(scn, step, budget);
  IcpResult solved = icp(scn, coeffs);

  GridScan grid(scn, coeffs, steps);
  grid.scan(0, /*joint=*/true);

  OracleReport report;
  std::ostringstream os;
  os << "joint M=" << scn.picos() << " F=" << scn.catalog.files() << " step=1/" << steps;
  report.instance = os.str();
  report.solver_objective = solved.objective;
  report.oracle_objective = grid.best;
  report.relative_gap =
      (grid.best - solved.objective) / std::max(std::fabs(solved.objective), 1e-300);
  report.structure_ok = structure_ok(solved.placement);
  report.points_scanned = grid.leaves;
  return report;
}

double kkt_residual_bandwidth(const DelayCoefficients& coeffs, const FileCatalog& catalog,
                              const CachePlacement& placement, const BandwidthAllocation& alloc) {
  double ql_total = 0.0;
  for (int f = 0; f < catalog.files(); ++f)
    ql_total += catalog.popularity[f] * catalog.length_bits[f];
  double a_sum = 0.0;
  for (double a : coeffs.access) a_sum += a;
  double access_weight = ql_total * a_sum;

  if (!(alloc.w[0] > 0.0)) return access_weight > 0.0 ? kInf : 0.0;
  double chi = access_weight / (alloc.w[0] * alloc.w[0]);

  double worst = 0.0;
  for (int m = 0; m < placement.picos; ++m) {
    double uncached_ql = 0.0;
    for (int f = 0; f < placement.files; ++f)
      uncached_ql +=
          catalog.popularity[f] * catalog.length_bits[f] * (1.0 - placement.at(m, f));
    double weight = coeffs.b(m + 1) * uncached_ql;
    if (weight <= 1e-15 * access_weight) continue;  // no uncached bits, w_m = 0 is stationary
    if (!(alloc.w[m + 1] > 0.0)) return kInf;
    double marginal = weight / (alloc.w[m + 1] * alloc.w[m + 1]);
    worst = std::max(worst, std::fabs(marginal - chi) / chi);
  }
  return worst;
}

std::vector<RowStructure> structure_check(const CachePlacement& placement) {
  constexpr double tol = 1e-9;
  std::vector<RowStructure> flags(placement.picos);
  for (int m = 0; m < placement.picos; ++m) {
    RowStructure& row = flags[m];
    row.nonincreasing = true;
    int fractional = 0;
    for (int f = 0; f < placement.files; ++f) {
      double s = placement.at(m, f);
      if (f > 0 && s > placement.at(m, f - 1) + tol) row.nonincreasing = false;
      if (s > tol && s < 1.0 - tol) ++fractional;
    }
    row.at_most_one_fractional = fractional <= 1;
  }
  return flags;
}

bool structure_ok(const CachePlacement& placement) {
  for (const RowStructure& row : structure_check(placement))
    if (!row.ok()) return false;
  return true;
}

}  // namespace hetcache
