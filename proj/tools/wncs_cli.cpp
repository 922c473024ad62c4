#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_commands.hpp"
#include "wncs/error.hpp"

namespace {

using namespace wncs;

void add_common(CLI::App& sub, cli::CommonArgs& common, std::optional<std::filesystem::path>& out,
                bool out_is_dir = false) {
  sub.add_option("--config", common.config, "Configuration file (key = value)")->check(CLI::ExistingFile);
  sub.add_option("--engine", common.engine, "Queue engine: det, geo-mg, geo-direct, erlang")->capture_default_str();
  sub.add_option("--seed", common.seed, "RNG seed (overrides the config)");
  sub.add_option("--slots", common.slots, "Simulated slots (overrides the config)");
  sub.add_option("--workers", common.workers, "Worker threads; 0 = available parallelism")->capture_default_str();
  sub.add_option("--out", out, out_is_dir ? "Output directory" : "Output file (default: stdout)");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw ValidationError("failed writing " + path.string());
}

void emit(const std::optional<std::filesystem::path>& out, const std::function<void(std::ostream&)>& body) {
  if (!out) {
    body(std::cout);
    return;
  }
  std::ostringstream s;
  body(s);
  write_file(*out, s.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-class semantics-aware networked control: queue analysis, simulation and power/admission search"};
  app.set_version_flag("--version", cli::kVersion);
  app.require_subcommand(1);

  cli::CommonArgs common;
  std::optional<std::filesystem::path> out;

  cli::SolveArgs solve;
  auto* s_solve = app.add_subcommand("solve", "Closed-form metrics from one queue engine");
  add_common(*s_solve, common, out);
  s_solve->add_option("--dump", solve.dump, "Write the transition matrix as triplets");

  cli::SimulateArgs simulate;
  auto* s_sim = app.add_subcommand("simulate", "Slot-level Monte Carlo run");
  add_common(*s_sim, common, out);
  s_sim->add_option("--service", simulate.service, "det or geo")->capture_default_str();
  s_sim->add_option("--departures", simulate.departures, "pre or post")->capture_default_str();
  s_sim->add_option("--uplink", simulate.uplink, "bernoulli, fading or ideal")->capture_default_str();

  cli::CompareArgs compare;
  auto* s_cmp = app.add_subcommand("compare", "Blocking of det / geo / erlang models and simulation over a load sweep");
  add_common(*s_cmp, common, out);
  s_cmp->add_option("--ratio", compare.ratio, "g1 / g2")->capture_default_str();
  s_cmp->add_option("--points", compare.points, "Load points")->capture_default_str();
  s_cmp->add_option("--g2-min", compare.g2_min)->capture_default_str();
  s_cmp->add_option("--g2-max", compare.g2_max)->capture_default_str();
  s_cmp->add_flag("--channel", compare.channel, "Use the fading uplink instead of p_u = 1");
  bool cmp_no_sim = false;
  s_cmp->add_flag("--no-sim", cmp_no_sim, "Analytic rows only");

  cli::SweepArgs sweep;
  auto* s_sweep = app.add_subcommand("sweep", "Metrics versus the class-1 admission probability");
  add_common(*s_sweep, common, out);
  s_sweep->add_option("--param", sweep.param, "Swept parameter")->capture_default_str();
  s_sweep->add_option("--from", sweep.from)->capture_default_str();
  s_sweep->add_option("--to", sweep.to)->capture_default_str();
  s_sweep->add_option("--steps", sweep.steps)->capture_default_str();
  s_sweep->add_option("--engines", sweep.engines, "Analytic engines")->delimiter(',')->capture_default_str();
  bool sweep_no_sim = false;
  s_sweep->add_flag("--no-sim", sweep_no_sim, "Analytic rows only");

  cli::ParetoArgs par;
  auto* s_par = app.add_subcommand("pareto", "Grid search over powers and admission probabilities");
  add_common(*s_par, common, out, true);
  s_par->add_option("--grid-powers", par.grid.power_levels, "Power levels")->capture_default_str();
  s_par->add_option("--grid-pmin", par.grid.power_min, "Smallest power [W]")->capture_default_str();
  s_par->add_option("--grid-pmax", par.grid.power_max, "Largest power [W]")->capture_default_str();
  s_par->add_option("--grid-etas", par.grid.eta_levels, "Admission levels k/n, k=1..n")->capture_default_str();
  s_par->add_option("--energy-rate", par.energy_rate, "Average power budget E/T [W] (overrides the config)");
  s_par->add_flag("--no-budget", par.no_budget, "Ignore the power budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::parse);
  }

  try {
    if (s_solve->parsed()) {
      emit(out, [&](std::ostream& o) { cli::cmd_solve(common, solve, o); });
    } else if (s_sim->parsed()) {
      emit(out, [&](std::ostream& o) { cli::cmd_simulate(common, simulate, o); });
    } else if (s_cmp->parsed()) {
      compare.simulate = !cmp_no_sim;
      emit(out, [&](std::ostream& o) { cli::cmd_compare(common, compare, o); });
    } else if (s_sweep->parsed()) {
      sweep.simulate = !sweep_no_sim;
      emit(out, [&](std::ostream& o) { cli::cmd_sweep(common, sweep, o); });
    } else if (s_par->parsed()) {
      const auto res = cli::cmd_pareto(common, par);
      const std::filesystem::path dir = out.value_or("pareto_out");
      std::filesystem::create_directories(dir);
      write_file(dir / "points.csv", res.points_csv);
      write_file(dir / "front.csv", res.front_csv);
      std::cout << res.summary;
      if (res.empty_feasible) return static_cast<int>(ErrorKind::empty_result);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
