#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lymphax/errors.hpp"
#include "lymphax/experiments.hpp"
#include "lymphax/report.hpp"

namespace fs = std::filesystem;
using namespace lymphax;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kConfig = 2, kNumerical = 3, kPartial = 4 };

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

Scenario prepare(const Options& opt) {
  Scenario scenario = load_scenario(opt.config);
  if (opt.seed) scenario.simulation.seed = *opt.seed;
  fs::create_directories(opt.out);
  open_output(fs::path(opt.out) / "scenario.yaml") << serialize_scenario(scenario);
  return scenario;
}

int cmd_run(const Options& opt) {
  const Scenario scenario = prepare(opt);
  const RunResult result = run_scenario(scenario);
  const fs::path out(opt.out);
  {
    auto os = open_output(out / "trajectory.csv");
    write_trajectory_csv(os, result.trajectory);
  }
  if (!result.trajectory.fields.empty()) {
    std::vector<double> dx;
    for (const auto& v : scenario.vessels) dx.push_back(v.length_mm * 1e-3 / scenario.simulation.cells);
    auto os = open_output(out / "fields.csv");
    write_fields_csv(os, result.trajectory, dx);
  }
  open_output(out / "indexes.json") << index_report_json(scenario, result);
  if (result.failure) {
    std::cerr << "lymphax: simulation failed: " << *result.failure << "\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_riemann(const Options& opt) {
  const Scenario scenario = prepare(opt);
  const RiemannComparison cmp = riemann_comparison(scenario);
  const fs::path out(opt.out);
  {
    auto os = open_output(out / "riemann.csv");
    write_riemann_csv(os, cmp);
  }
  {
    auto os = open_output(out / "riemann_errors.csv");
    write_riemann_errors_csv(os, cmp);
  }
  open_output(out / "riemann.json") << riemann_json(cmp);
  return kOk;
}

int cmd_sweep(const Options& opt) {
  const Scenario scenario = prepare(opt);
  const auto points = run_sweep(scenario, opt.workers);
  auto os = open_output(fs::path(opt.out) / "sweep.csv");
  write_sweep_csv(os, points);
  int failed = 0;
  for (const auto& p : points)
    if (!p.report) {
      ++failed;
      std::cerr << "lymphax: P_in = " << p.P_in << ", P_out = " << p.P_out << " failed: " << p.error << "\n";
    }
  return failed ? kPartial : kOk;
}

int cmd_sensitivity(const Options& opt) {
  const Scenario scenario = prepare(opt);
  const std::uint64_t seed = scenario.simulation.seed;
  const auto study = run_sensitivity(scenario, seed, opt.workers, [](int done, int total) {
    std::cerr << "lymphax: replicate " << done << "/" << total << "\n";
  });
  const fs::path out(opt.out);
  fs::create_directories(out / "replicates");
  for (std::size_t r = 0; r < study.samples.size(); ++r) {
    char name[32];
    std::snprintf(name, sizeof name, "replicate_%04zu.csv", r);
    auto os = open_output(out / "replicates" / name);
    write_sensitivity_replicate_csv(os, study, r);
  }
  {
    auto os = open_output(out / "sensitivity_summary.csv");
    write_sensitivity_summary_csv(os, study);
  }
  {
    auto os = open_output(out / "sensitivity_table.csv");
    write_sensitivity_table_csv(os, study);
  }
  {
    auto os = open_output(out / "sensitivity_points.csv");
    write_sensitivity_points_csv(os, study);
  }
  open_output(out / "sensitivity.json") << sensitivity_json(study);
  return kOk;
}

int cmd_valve_study(const Options& opt) {
  const Scenario scenario = prepare(opt);
  const auto points = run_valve_study(scenario, opt.workers);
  auto os = open_output(fs::path(opt.out) / "valve_study.csv");
  write_valve_study_csv(os, points.data(), points.size(), scenario.valve_study.valve, scenario.valve_study.parameter);
  int failed = 0;
  for (const auto& p : points)
    if (!p.report) {
      ++failed;
      std::cerr << "lymphax: " << scenario.valve_study.parameter << " = " << p.value << " failed: " << p.error << "\n";
    }
  return failed ? kPartial : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-dimensional lymphatic collector simulator"};
  app.require_subcommand(1, 1);
  Options opt;

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
  };
  const Command commands[] = {
      {"run", "Simulate a collector and report its lymphodynamical indexes", cmd_run},
      {"riemann", "Compare SLIC against the exact Riemann solution", cmd_riemann},
      {"sweep", "Index grid over inlet and outlet pressures", cmd_sweep},
      {"sensitivity", "Local sensitivity analysis over random base points", cmd_sensitivity},
      {"valve-study", "Sweep stenosis or regurgitation of one valve", cmd_valve_study},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", opt.config, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory")->required();
    sub->add_option("--seed", opt.seed, "Override the scenario seed");
    sub->add_option("--workers", opt.workers, "Concurrent runs")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  for (const auto& c : commands) {
    if (!app.got_subcommand(c.name)) continue;
    try {
      return c.fn(opt);
    } catch (const ConfigError& e) {
      std::cerr << "lymphax: configuration error: " << e.what() << "\n";
      return kConfig;
    } catch (const DomainError& e) {
      std::cerr << "lymphax: configuration error: " << e.what() << "\n";
      return kConfig;
    } catch (const NumericalError& e) {
      std::cerr << "lymphax: numerical failure: " << e.what() << "\n";
      return kNumerical;
    } catch (const std::exception& e) {
      std::cerr << "lymphax: error: " << e.what() << "\n";
      return kNumerical;
    }
  }
  return kUsage;
}
