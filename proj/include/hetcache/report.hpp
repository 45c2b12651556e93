#pragma once

#include <string>
#include <vector>

#include "hetcache/baselines.hpp"
#include "hetcache/oracle.hpp"

namespace hetcache {

// Fixed-field-order JSON so identical inputs give byte-identical files.
std::string solve_report_to_json(const SolveReport& report);

// CSV of the ICP objective trace: header + one row per sweep.
std::string icp_trace_to_csv(const IcpTrace& trace);

// CSV of oracle comparisons for regression history.
std::string oracle_reports_to_csv(const std::vector<OracleReport>& reports);

}  // namespace hetcache
