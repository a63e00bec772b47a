// gridloc command-line front end: scenario simulation, decoding with any
// estimator, evaluation against ground truth, and benchmarking.
//
// Exit codes: 0 success, 1 validation error, 2 I/O or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gridloc/runner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

gridloc::RunConfig load_config(const std::string& path, std::uint64_t* seed,
                               const std::string* estimator) {
  gridloc::RunConfig config =
      path.empty() ? gridloc::RunConfig{}
                   : gridloc::parse_config(gridloc::read_json(path));
  if (seed) config.seed = *seed;
  if (estimator && !estimator->empty()) config.estimator = *estimator;
  config.validate();
  return config;
}

int cmd_simulate(const gridloc::RunConfig& config, const fs::path& out_dir) {
  const gridloc::Scenario scenario = gridloc::simulate_scenario(config);
  fs::create_directories(out_dir);
  gridloc::write_anchors_csv(out_dir / "anchors.csv", scenario.anchors);
  gridloc::write_ranges_csv(out_dir / "ranges.csv", scenario.frames);
  gridloc::write_truth_csv(out_dir / "truth.csv", scenario.truth);
  std::cout << "wrote " << scenario.frames.size() << " frames to "
            << out_dir.string() << "\n";
  return 0;
}

int cmd_decode(const gridloc::RunConfig& config, const fs::path& in_dir,
               const fs::path& out_dir) {
  const auto anchors = gridloc::read_anchors_csv(in_dir / "anchors.csv");
  const auto frames = gridloc::read_ranges_csv(in_dir / "ranges.csv");
  std::vector<gridloc::TimedPosition> truth;
  if (fs::exists(in_dir / "truth.csv")) {
    truth = gridloc::read_truth_csv(in_dir / "truth.csv");
  }

  const gridloc::RunOutput output = gridloc::run_estimator(
      config, anchors, frames, truth.empty() ? nullptr : &truth);

  fs::create_directories(out_dir);
  gridloc::write_trajectory_csv(out_dir / "trajectory.csv", output.records);
  gridloc::write_json(out_dir / "report.json",
                      gridloc::make_report(config, output));
  std::cout << output.estimator << ": " << output.records.size() << " steps";
  if (output.rmse_m) std::cout << ", rmse " << *output.rmse_m << " m";
  std::cout << "\n";
  return 0;
}

int cmd_evaluate(const fs::path& estimate_path, const fs::path& truth_path,
                 const std::string& out_path) {
  const auto records = gridloc::read_trajectory_csv(estimate_path);
  const auto truth = gridloc::read_truth_csv(truth_path);

  std::vector<gridloc::Vec2> estimate;
  std::vector<double> times;
  for (const auto& r : records) {
    estimate.push_back(r.position);
    times.push_back(r.time);
  }
  const auto aligned = gridloc::resample_truth(truth, times);

  json report;
  report["rmse_m"] = gridloc::rmse(estimate, aligned);
  report["lce_m"] = gridloc::loop_closure_error(estimate);
  report["per_step_errors"] = gridloc::per_step_errors(estimate, aligned);
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    gridloc::write_json(out_path, report);
  }
  return 0;
}

int cmd_bench(const gridloc::RunConfig& config, const std::string& out_path) {
  const auto rows = gridloc::run_bench(config);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw gridloc::ParseError("cannot write " + out_path);
    out = &file;
  }
  *out << "estimator,N,r,T,wall_time_s,transitions,backpointer_cells\n";
  for (const auto& row : rows) {
    *out << row.estimator << ',' << row.cell_count << ',' << row.levels << ','
         << row.horizon << ','
         << gridloc::format_number(row.mean_wall_time_seconds) << ','
         << row.transitions << ',' << row.table_cells << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-HMM target localization from anchor ranges"};
  app.require_subcommand(1);

  std::string config_path;
  std::string estimator;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd, bool with_estimator) {
    cmd->add_option("--config", config_path, "RunConfig JSON file");
    cmd->add_option("--seed", seed, "Override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
    if (with_estimator) {
      cmd->add_option("--estimator", estimator,
                      "viterbi|adaptive|trilateration|ekf|erts|pf");
    }
  };

  std::string out_path;
  std::string in_path;
  std::string estimate_path;
  std::string truth_path;

  CLI::App* simulate = app.add_subcommand("simulate", "Generate a scenario");
  add_common(simulate, false);
  simulate->add_option("--out", out_path, "Output directory")->required();

  CLI::App* decode = app.add_subcommand("decode", "Decode a scenario");
  add_common(decode, true);
  decode->add_option("--in", in_path, "Scenario directory")->required();
  decode->add_option("--out", out_path, "Output directory")->required();

  CLI::App* evaluate = app.add_subcommand("evaluate", "Compare to truth");
  evaluate->add_option("--estimate", estimate_path, "trajectory.csv")
      ->required();
  evaluate->add_option("--truth", truth_path, "truth.csv")->required();
  evaluate->add_option("--out", out_path, "metrics JSON (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "Benchmark estimators");
  add_common(bench, false);
  bench->add_option("--out", out_path, "CSV output (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(evaluate)) {
      return cmd_evaluate(estimate_path, truth_path, out_path);
    }
    gridloc::RunConfig config =
        load_config(config_path, seed_set ? &seed : nullptr, &estimator);
    if (app.got_subcommand(simulate)) return cmd_simulate(config, out_path);
    if (app.got_subcommand(decode)) {
      return cmd_decode(config, in_path, out_path);
    }
    return cmd_bench(config, out_path);
  } catch (const gridloc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gridloc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
