#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "formsim/plots.hpp"
#include "formsim/trajectory_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::vector<int> ids_of(const formsim::Scenario& s) {
  std::vector<int> ids;
  ids.reserve(s.agents.size());
  for (const auto& a : s.agents) ids.push_back(a.id);
  return ids;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 bool parallel) {
  const formsim::Scenario scenario = formsim::load_scenario_file(scenario_path);
  formsim::RunOptions options;
  options.parallel = parallel;
  const formsim::RunResult result = formsim::run(scenario, options);

  if (result.metrics.admissible == 0) {
    std::cerr << "warning: initial layout is not admissible (V_a(0) >= V_m); "
                 "collision avoidance is not certified\n";
  }

  std::filesystem::create_directories(out_dir);
  formsim::write_text_file(out_dir + "/trajectory.csv",
                           formsim::write_trajectory(result.records, ids_of(scenario)));
  formsim::write_text_file(out_dir + "/metrics.txt",
                           formsim::format_metrics(result.metrics));
  std::cout << formsim::format_metrics(result.metrics);

  if (result.fault) {
    std::cerr << "fault: agent " << result.fault->agent_id << " inside obstacle "
              << result.fault->obstacle_index << " at step " << result.fault->step
              << " (records up to the fault were written)\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_check(const std::string& scenario_path) {
  const formsim::Scenario scenario = formsim::load_scenario_file(scenario_path);
  std::cout << formsim::serialize_scenario(scenario);
  return kExitOk;
}

int cmd_report(const std::string& records_path, const std::string& scenario_path) {
  const formsim::TrajectoryFile file =
      formsim::read_trajectory(formsim::read_text_file(records_path));
  formsim::RunMetrics metrics;
  if (!scenario_path.empty()) {
    const formsim::Scenario scenario = formsim::load_scenario_file(scenario_path);
    std::vector<formsim::Vec2> starts;
    for (const auto& a : file.records.front().agents) starts.emplace_back(a.x, a.y);
    const int adm = formsim::admissible(starts, scenario.potential) ? 1 : 0;
    metrics = formsim::compute_metrics(file.records, &scenario.formation,
                                       scenario.tol_conv, adm);
  } else {
    metrics = formsim::compute_metrics(file.records, nullptr, 0.0, -1);
  }
  std::cout << formsim::format_metrics(metrics);
  return kExitOk;
}

int cmd_plot(const std::string& records_path, const std::string& out_dir,
             const std::string& scenario_path) {
  const formsim::TrajectoryFile file =
      formsim::read_trajectory(formsim::read_text_file(records_path));
  std::vector<formsim::Obstacle> obstacles;
  if (!scenario_path.empty()) {
    obstacles = formsim::load_scenario_file(scenario_path).obstacles;
  }
  for (const std::string& path :
       formsim::emit_plots(file.records, file.agent_ids, obstacles, out_dir)) {
    std::cout << path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formation-control simulator for unicycle robots"};
  app.require_subcommand(1);

  std::string scenario_path, records_path, out_dir = "out", with_scenario;
  bool parallel = false;

  CLI::App* simulate = app.add_subcommand("simulate", "Run a scenario and write records");
  simulate->add_option("scenario", scenario_path, "scenario file")->required();
  simulate->add_option("--out", out_dir, "output directory (trajectory.csv, metrics.txt)");
  simulate->add_flag("--parallel", parallel, "evaluate agent controls on worker threads");

  CLI::App* check = app.add_subcommand("check", "Validate a scenario and echo it");
  check->add_option("scenario", scenario_path, "scenario file")->required();

  CLI::App* report = app.add_subcommand("report", "Recompute metrics from records");
  report->add_option("records", records_path, "trajectory csv")->required();
  report->add_option("--scenario", with_scenario,
                     "scenario file (enables convergence/admissibility)");

  CLI::App* plot = app.add_subcommand("plot", "Render SVG plots from records");
  plot->add_option("records", records_path, "trajectory csv")->required();
  plot->add_option("--out", out_dir, "output directory");
  plot->add_option("--scenario", with_scenario, "scenario file (draws obstacles)");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return cmd_simulate(scenario_path, out_dir, parallel);
    if (check->parsed()) return cmd_check(scenario_path);
    if (report->parsed()) return cmd_report(records_path, with_scenario);
    if (plot->parsed()) return cmd_plot(records_path, out_dir, with_scenario);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const formsim::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
