#pragma once

#include <string>
#include <vector>

#include "formsim/engine.hpp"

namespace formsim {

/// Seven SVG plots into out_dir: x(t), y(t), theta(t), u(t), v(t), d_min(t)
/// and the planar trajectories (with obstacle circles when any are given).
/// Returns the paths written.
std::vector<std::string> emit_plots(const std::vector<StepRecord>& records,
                                    const std::vector<int>& agent_ids,
                                    const std::vector<Obstacle>& obstacles,
                                    const std::string& out_dir);

}  // namespace formsim
