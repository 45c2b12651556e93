#include "hetcache/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace hetcache {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string solve_report_to_json(const SolveReport& report) {
  json j;
  j["algorithm"] = report.algorithm;
  j["objective_s"] = report.objective_s;
  j["hit_ratio"] = report.hit_ratio;
  j["bandwidth_kkt_residual"] = report.bandwidth_kkt_residual;
  j["allocation_hz"] = report.allocation.w;
  json rows = json::array();
  for (int m = 0; m < report.placement.picos; ++m) {
    json row = json::array();
    for (int f = 0; f < report.placement.files; ++f) row.push_back(report.placement.at(m, f));
    rows.push_back(row);
  }
  j["placement"] = rows;
  json structure = json::array();
  for (const RowStructure& row : report.structure)
    structure.push_back({{"nonincreasing", row.nonincreasing},
                         {"at_most_one_fractional", row.at_most_one_fractional}});
  j["structure"] = structure;
  json decomposition = json::array();
  for (size_t bs = 0; bs < report.decomposition.size(); ++bs) {
    const DelayBreakdown& part = report.decomposition[bs];
    decomposition.push_back({{"bs", bs},
                             {"access_s", part.access},
                             {"fronthaul_s", part.fronthaul},
                             {"buffer_s", part.buffer}});
  }
  j["delay_decomposition"] = decomposition;
  if (!report.trace.iterations.empty() || report.algorithm == "icp") {
    json trace;
    trace["status"] = report.trace.status;
    trace["initial_objective_s"] = report.trace.initial_objective;
    json iters = json::array();
    for (const IcpIteration& it : report.trace.iterations) {
      int changed = 0;
      for (bool c : it.row_changed) changed += c ? 1 : 0;
      iters.push_back({{"sweep", it.sweep},
                       {"objective_s", it.objective},
                       {"rows_changed", changed},
                       {"root_solves", it.root_solves},
                       {"candidate_evals", it.candidate_evals}});
    }
    trace["iterations"] = iters;
    j["trace"] = trace;
  }
  return j.dump(2) + "\n";
}

std::string icp_trace_to_csv(const IcpTrace& trace) {
  std::ostringstream os;
  os << "# hetcache-trace-v1\n";
  os << "sweep,objective_s,rows_changed,root_solves,candidate_evals\n";
  os << "0," << num(trace.initial_objective) << ",,,\n";
  for (const IcpIteration& it : trace.iterations) {
    int changed = 0;
    for (bool c : it.row_changed) changed += c ? 1 : 0;
    os << it.sweep << ',' << num(it.objective) << ',' << changed << ',' << it.root_solves << ','
       << it.candidate_evals << '\n';
  }
  return os.str();
}

std::string oracle_reports_to_csv(const std::vector<OracleReport>& reports) {
  std::ostringstream os;
  os << "# hetcache-oracle-v1\n";
  os << "instance,solver_objective,oracle_objective,relative_gap,structure_ok,points\n";
  for (const OracleReport& r : reports) {
    os << '"' << r.instance << "\"," << num(r.solver_objective) << ',' << num(r.oracle_objective)
       << ',' << num(r.relative_gap) << ',' << (r.structure_ok ? 1 : 0) << ','
       << r.points_scanned << '\n';
  }
  return os.str();
}

}  // namespace hetcache
