#pragma once

#include <string>

#include "formsim/engine.hpp"

namespace formsim {

/// CSV with one header row and one row per step:
/// t, then per agent x,y,theta,v,u,mode (columns suffixed by agent id),
/// then V_a, d_min, clearance. Numbers carry 9 significant digits; mode is
/// the integer Mode value.
std::string write_trajectory(const std::vector<StepRecord>& records,
                             const std::vector<int>& agent_ids);

struct TrajectoryFile {
  std::vector<StepRecord> records;
  std::vector<int> agent_ids;
};

/// Inverse of write_trajectory (values at file precision).
TrajectoryFile read_trajectory(const std::string& csv);

/// Flat key-value metrics document; also the `simulate`/`report` stdout form.
std::string format_metrics(const RunMetrics& metrics);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace formsim
