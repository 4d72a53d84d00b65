// oppnet: run, sweep and analyze opportunistic-network scenarios.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "oppnet/analytics.hpp"
#include "oppnet/cli/report.hpp"
#include "oppnet/cli/sweep.hpp"
#include "oppnet/config_io.hpp"
#include "oppnet/engine/simulator.hpp"
#include "oppnet/format.hpp"
#include "oppnet/mobility.hpp"

namespace {

using namespace oppnet;

std::string na(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_estimators(const ScenarioConfig& config) {
  const auto s = analytics::summarize(config);
  std::cout << "estimator,value,unit\n"
            << "encounter_probability_src," << format_number(s.encounter_probability_source) << ",\n"
            << "encounter_probability_dst," << format_number(s.encounter_probability_destination)
            << ",\n"
            << "expected_transition_length," << format_number(s.transition_length) << ",m\n"
            << "expected_epoch_time," << format_number(s.epoch_time) << ",s\n"
            << "expected_contact_duration_diametral_bound,"
            << format_number(s.contact_duration_bound) << ",s\n"
            << "max_intercontact_time_link," << format_number(s.max_intercontact) << ",s\n"
            << "max_intercontact_time_buffer," << format_number(s.buffer_intercontact) << ",s\n";
  for (const auto& [id, p] : s.satellite_region_probability) {
    std::cout << "satellite_" << id << "_region_visit_probability_truncated," << format_number(p)
              << ",\n";
  }
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, const std::string& csv,
            const std::string& log_path, bool analyze) {
  ScenarioConfig config = load_scenario_file(path);
  if (seed) config.seed = *seed;
  const auto result = engine::run(config);
  const auto& m = result.metrics;

  std::cout << "scenario: " << std::filesystem::path(path).stem().string() << "\n"
            << "router: " << to_string(config.router.kind) << "\n"
            << "mobility: " << cli::mobility_label(config) << "\n"
            << "seed: " << config.seed << "\n"
            << "delivery_probability: " << format_number(m.delivery_probability) << "\n"
            << "overhead_ratio: " << na(m.overhead_ratio) << "\n"
            << "average_latency_s: " << na(m.average_latency) << "\n"
            << "created: " << m.created << "\n"
            << "delivered: " << m.delivered << "\n"
            << "relayed: " << m.relayed << "\n"
            << "dropped_ttl: " << m.dropped_ttl << "\n"
            << "dropped_buffer: " << m.dropped_buffer << "\n"
            << "encounters_src: " << result.encounters.source << "\n"
            << "encounters_dst: " << result.encounters.destination << "\n";
  for (const auto& node : config.nodes) {
    if (node.bias) {
      std::cout << "satellite " << node.id << " region visit probability (truncated selector): "
                << format_number(mobility::truncated_region_probability(node.bias->degree,
                                                                        node.bias->sigma))
                << "\n";
    }
  }
  if (analyze) print_estimators(config);

  if (!csv.empty()) {
    const std::vector<cli::ReportRow> rows{
        cli::make_row(std::filesystem::path(path).stem().string(), config, result)};
    write_file(csv, cli::emit_report(rows));
  }
  if (!log_path.empty()) write_file(log_path, engine::event_log_text(result.log));
  return 0;
}

int cmd_sweep(const std::string& path, const std::vector<std::string>& axes, int reps,
              unsigned workers, const std::string& csv, std::optional<std::uint64_t> seed) {
  cli::SweepSpec spec;
  spec.scenario = std::filesystem::path(path).stem().string();
  spec.base = load_scenario_file(path);
  if (seed) spec.base.seed = *seed;
  for (const auto& a : axes) spec.axes.push_back(cli::parse_axis(a));
  spec.replications = reps;

  const auto rows = cli::run_sweep(spec, workers);
  write_file(csv, cli::emit_report(rows));
  const auto failed = std::count_if(rows.begin(), rows.end(),
                                    [](const cli::ReportRow& r) { return !r.metrics; });
  std::cout << "wrote " << rows.size() << " rows to " << csv;
  if (failed > 0) std::cout << " (" << failed << " failed points)";
  std::cout << "\n";
  return 0;
}

int cmd_fit(const std::string& csv) {
  const auto rows = cli::parse_report(read_file(csv));
  const auto fit = cli::fit_cube_from_rows(rows);
  std::cout << "exponent: " << format_number(fit.exponent) << "\n"
            << "c: " << format_number(fit.c) << "\n"
            << "residual: " << format_number(fit.residual) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opportunistic network simulator with affinity-biased mobility"};
  app.require_subcommand(1);

  std::string cfg_path;
  std::string csv_path;
  std::string log_path;
  std::optional<std::uint64_t> seed;
  bool analyze = false;

  auto* run = app.add_subcommand("run", "Run one scenario and print its metrics");
  run->add_option("config", cfg_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--csv", csv_path, "Write a one-row CSV report");
  run->add_option("--log", log_path, "Write the event log");
  run->add_flag("--analyze", analyze, "Also print the closed-form estimators");

  std::vector<std::string> axes;
  int reps = 1;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write a CSV report");
  sweep->add_option("config", cfg_path, "Base scenario file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--axis", axes, "name=v1,v2,... (area_side|mobility|router); repeatable")
      ->required();
  sweep->add_option("--reps", reps, "Replications per point")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--csv", csv_path, "Output CSV")->required();
  sweep->add_option("--seed", seed, "Base seed (replication r uses seed + r)");

  auto* an = app.add_subcommand("analyze", "Print the closed-form estimators for a scenario");
  an->add_option("config", cfg_path, "Scenario file")->required()->check(CLI::ExistingFile);

  auto* fit = app.add_subcommand("fit-cube", "Fit encounters = c * area^k over a sweep CSV");
  fit->add_option("--csv", csv_path, "Sweep CSV")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(cfg_path, seed, csv_path, log_path, analyze);
    if (*sweep) return cmd_sweep(cfg_path, axes, reps, workers, csv_path, seed);
    if (*an) {
      print_estimators(load_scenario_file(cfg_path));
      return 0;
    }
    if (*fit) return cmd_fit(csv_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
