#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wncs/analysis.hpp"
#include "wncs/error.hpp"
#include "wncs/format.hpp"
#include "wncs/parallel.hpp"
#include "wncs/queue_det.hpp"
#include "wncs/queue_geo.hpp"

namespace wncs::cli {

SystemConfig comparison_preset() {
  SystemConfig c = default_config();
  c.compute.capacity = 12;
  c.task1.units_required = 1;
  c.task2.units_required = 4;
  c.task1.service_slots = 5;
  c.task2.service_slots = 10;
  c.task1.admit_prob = 1.0;
  c.task2.admit_prob = 1.0;
  return c;
}

SystemConfig resolve_config(const CommonArgs& common, const SystemConfig& fallback) {
  SystemConfig c = common.config ? load_config(*common.config) : fallback;
  if (common.seed) c.rng_seed = *common.seed;
  if (common.slots) {
    if (*common.slots < 1) throw ValidationError("--slots must be >= 1");
    c.sim_slots = *common.slots;
  }
  const auto report = validate(c);
  if (!report.valid()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  return c;
}

std::string csv_preamble(const std::string& command, const SystemConfig& config) {
  return "# wncs-csv v1 command=" + command + " config_hash=" + config_hash(config) + " version=" + kVersion +
         "\n";
}

sim::ServiceMode parse_service(const std::string& s) {
  if (s == "det" || s == "deterministic") return sim::ServiceMode::deterministic;
  if (s == "geo" || s == "geometric") return sim::ServiceMode::geometric;
  throw ParseError("unknown service mode '" + s + "' (expected det or geo)");
}

sim::DepartureSemantics parse_departures(const std::string& s) {
  if (s == "pre") return sim::DepartureSemantics::pre;
  if (s == "post") return sim::DepartureSemantics::post;
  throw ParseError("unknown departure semantics '" + s + "' (expected pre or post)");
}

sim::UplinkMode parse_uplink(const std::string& s) {
  if (s == "bernoulli") return sim::UplinkMode::bernoulli;
  if (s == "fading") return sim::UplinkMode::fading;
  if (s == "ideal") return sim::UplinkMode::ideal;
  throw ParseError("unknown uplink mode '" + s + "' (expected bernoulli, fading or ideal)");
}

namespace {

std::string opt_num(double v) { return std::isnan(v) ? std::string() : fmt_double(v); }

}  // namespace

void cmd_solve(const CommonArgs& common, const SolveArgs& args, std::ostream& out) {
  const Engine engine = parse_engine(common.engine);
  const SystemConfig config = resolve_config(common, default_config());
  const MetricsReport m = analyze(config, engine);

  if (args.dump) {
    std::ofstream f(*args.dump, std::ios::binary);
    if (!f) throw ValidationError("cannot open " + args.dump->string() + " for writing");
    const QueueModel model = QueueModel::from_config(config);
    switch (engine) {
      case Engine::det:
        det::write_triplets(f, *det::StateSpace::enumerate(model));
        break;
      case Engine::geo_mg:
      case Engine::geo_direct:
        geo::write_triplets(f, model, geo::StateSpace(model.capacity, model.units1, model.units2));
        break;
      case Engine::erlang:
        throw ValidationError("--dump: the erlang engine has no transition matrix");
    }
  }

  out << csv_preamble("solve", config);
  out << "engine,uplink1,uplink2,availability1,availability2,aoa1,aoa2,coma,aoi\n";
  out << engine_name(m.engine) << ',' << fmt_double(m.uplink[0]) << ',' << fmt_double(m.uplink[1]) << ','
      << fmt_double(m.availability[0]) << ',' << fmt_double(m.availability[1]) << ',' << fmt_double(m.aoa[0])
      << ',' << fmt_double(m.aoa[1]) << ',' << fmt_double(m.coma) << ',' << fmt_double(m.aoi) << '\n';
}

void cmd_simulate(const CommonArgs& common, const SimulateArgs& args, std::ostream& out) {
  const SystemConfig config = resolve_config(common, default_config());
  sim::SimOptions opts;
  opts.service = parse_service(args.service);
  opts.departures = parse_departures(args.departures);
  opts.uplink = parse_uplink(args.uplink);
  const auto r = sim::run(config, opts);
  out << csv_preamble("simulate", config);
  out << sim::csv_header() << '\n' << sim::csv_row(r) << '\n';
}

void cmd_compare(const CommonArgs& common, const CompareArgs& args, std::ostream& out) {
  if (args.points < 1) throw ValidationError("--points must be >= 1");
  if (!(args.ratio >= 0.0)) throw ValidationError("--ratio must be >= 0");
  if (!(args.g2_min >= 0.0 && args.g2_max >= args.g2_min)) throw ValidationError("need 0 <= --g2-min <= --g2-max");
  if (args.g2_max * (1.0 + args.ratio) > 1.0) throw ValidationError("load sweep exceeds g1 + g2 <= 1");

  const SystemConfig base = resolve_config(common, comparison_preset());
  struct Point {
    double g1 = 0.0;
    double g2 = 0.0;
    std::array<double, 2> det{}, geo{}, erl{};
    std::array<sim::Estimate, 2> sim_det{}, sim_geo{};
  };
  std::vector<Point> pts(static_cast<std::size_t>(args.points));
  for (int k = 0; k < args.points; ++k) {
    const double g2 =
        args.points == 1 ? args.g2_min : args.g2_min + (args.g2_max - args.g2_min) * k / (args.points - 1);
    pts[static_cast<std::size_t>(k)].g2 = g2;
    pts[static_cast<std::size_t>(k)].g1 = args.ratio * g2;
  }

  parallel_for(pts.size(), common.workers, [&](std::size_t k) {
    Point& p = pts[k];
    SystemConfig c = base;
    c.task1.gen_prob = p.g1;
    c.task2.gen_prob = p.g2;
    QueueModel model = QueueModel::ideal_uplink(c);
    if (args.channel) model = QueueModel::from_config(c);
    const auto block = [](std::array<double, 2> a) { return std::array<double, 2>{1.0 - a[0], 1.0 - a[1]}; };
    p.det = block(engine_availability(model, Engine::det));
    p.geo = block(engine_availability(model, Engine::geo_mg));
    p.erl = block(engine_availability(model, Engine::erlang));
    if (args.simulate) {
      sim::SimOptions o;
      o.uplink = args.channel ? sim::UplinkMode::bernoulli : sim::UplinkMode::ideal;
      o.service = sim::ServiceMode::deterministic;
      p.sim_det = sim::run(c, o).blocking;
      o.service = sim::ServiceMode::geometric;
      p.sim_geo = sim::run(c, o).blocking;
    }
  });

  out << csv_preamble("compare", base);
  out << "g1,g2,model,task,blocking,std_error,det_le_geo\n";
  for (const auto& p : pts) {
    for (int i = 0; i < 2; ++i) {
      const char* ordered = p.det[i] <= p.geo[i] ? "1" : "0";
      auto row = [&](const char* model, double value, double se) {
        out << fmt_double(p.g1) << ',' << fmt_double(p.g2) << ',' << model << ',' << (i + 1) << ','
            << fmt_double(value) << ',' << opt_num(se) << ',' << ordered << '\n';
      };
      row("det", p.det[i], std::nan(""));
      row("geo-mg", p.geo[i], std::nan(""));
      row("erlang", p.erl[i], std::nan(""));
      if (args.simulate) {
        row("sim-det", p.sim_det[i].mean, p.sim_det[i].std_error);
        row("sim-geo", p.sim_geo[i].mean, p.sim_geo[i].std_error);
      }
    }
  }
}

void cmd_sweep(const CommonArgs& common, const SweepArgs& args, std::ostream& out) {
  if (args.param != "eta1") throw ValidationError("sweep supports --param eta1 only");
  if (args.steps < 1) throw ValidationError("--steps must be >= 1");
  if (!(args.from > 0.0 && args.from <= 1.0 && args.to > 0.0 && args.to <= 1.0))
    throw ValidationError("eta1 range must lie within (0, 1]");
  std::vector<Engine> engines;
  for (const auto& e : args.engines) engines.push_back(parse_engine(e));

  const SystemConfig base = resolve_config(common, default_config());
  struct Point {
    double eta1 = 0.0;
    std::vector<MetricsReport> analytic;
    sim::SimResult sim_det, sim_geo;
  };
  std::vector<Point> pts(static_cast<std::size_t>(args.steps));
  for (int k = 0; k < args.steps; ++k) {
    double v = args.steps == 1 ? args.from : args.from + (args.to - args.from) * k / (args.steps - 1);
    if (k == args.steps - 1) v = args.to;
    pts[static_cast<std::size_t>(k)].eta1 = v;
  }

  parallel_for(pts.size(), common.workers, [&](std::size_t k) {
    Point& p = pts[k];
    SystemConfig c = base;
    c.task1.admit_prob = p.eta1;
    for (Engine e : engines) p.analytic.push_back(analyze(c, e));
    if (args.simulate) {
      sim::SimOptions o;
      o.service = sim::ServiceMode::deterministic;
      p.sim_det = sim::run(c, o);
      o.service = sim::ServiceMode::geometric;
      p.sim_geo = sim::run(c, o);
    }
  });

  out << csv_preamble("sweep", base);
  out << "eta1,model,availability1,availability2,aoa1,aoa1_se,aoa2,aoa2_se,coma,coma_se,aoi,aoi_se\n";
  for (const auto& p : pts) {
    for (const auto& m : p.analytic) {
      out << fmt_double(p.eta1) << ',' << engine_name(m.engine) << ',' << fmt_double(m.availability[0]) << ','
          << fmt_double(m.availability[1]) << ',' << fmt_double(m.aoa[0]) << ",," << fmt_double(m.aoa[1]) << ",,"
          << fmt_double(m.coma) << ",," << fmt_double(m.aoi) << ",\n";
    }
    if (!args.simulate) continue;
    for (const auto* r : {&p.sim_det, &p.sim_geo}) {
      const auto est = [&](const sim::Estimate& e) { out << ',' << fmt_double(e.mean) << ',' << opt_num(e.std_error); };
      out << fmt_double(p.eta1) << ','
          << (r->service == sim::ServiceMode::deterministic ? "sim-det" : "sim-geo") << ','
          << fmt_double(1.0 - r->blocking[0].mean) << ',' << fmt_double(1.0 - r->blocking[1].mean);
      est(r->aoa[0]);
      est(r->aoa[1]);
      est(r->coma);
      est(r->aoi);
      out << '\n';
    }
  }
}

ParetoOutputs cmd_pareto(const CommonArgs& common, const ParetoArgs& args) {
  SystemConfig config = resolve_config(common, default_config());
  if (args.no_budget) config.energy_rate.reset();
  if (args.energy_rate) {
    if (!(*args.energy_rate >= 0.0)) throw ValidationError("--energy-rate must be >= 0");
    config.energy_rate = *args.energy_rate;
  }
  const Engine engine = parse_engine(common.engine);
  const auto result = pareto::search(config, args.grid, engine, common.workers);

  ParetoOutputs o;
  const std::string preamble = csv_preamble("pareto", config);
  auto row = [](std::ostream& s, const pareto::DecisionPoint& p) {
    s << fmt_double(p.decision.p_t1) << ',' << fmt_double(p.decision.p_t2) << ',' << fmt_double(p.decision.eta1)
      << ',' << fmt_double(p.decision.eta2) << ',' << (p.feasible ? 1 : 0) << ',' << fmt_double(p.aoa1) << ','
      << fmt_double(p.coma);
  };
  {
    std::ostringstream s;
    s << preamble << "p_t1,p_t2,eta1,eta2,feasible,aoa1,coma\n";
    for (const auto& p : result.points) {
      row(s, p);
      s << '\n';
    }
    o.points_csv = s.str();
  }
  {
    std::ostringstream s;
    s << preamble << "set,p_t1,p_t2,eta1,eta2,feasible,aoa1,coma\n";
    for (const auto& p : result.front) {
      s << "front,";
      row(s, p);
      s << '\n';
    }
    for (const auto& p : result.baseline) {
      s << "baseline,";
      row(s, p);
      s << '\n';
    }
    if (result.baseline_best) {
      s << "baseline_best,";
      row(s, *result.baseline_best);
      s << '\n';
    }
    o.front_csv = s.str();
  }

  std::ostringstream sum;
  sum << "engine=" << engine_name(engine) << " points=" << result.points.size()
      << " feasible=" << result.feasible_count << " front_size=" << result.front.size() << '\n';
  o.empty_feasible = result.feasible_count == 0;
  if (o.empty_feasible) {
    sum << "no feasible decision under the energy budget\n";
    return o;
  }
  double front_min = std::numeric_limits<double>::infinity();
  for (const auto& p : result.front) front_min = std::min(front_min, p.coma);
  if (result.baseline_best) {
    sum << "baseline_min_coma=" << fmt_double(result.baseline_best->coma) << '\n';
    sum << "front_min_coma=" << fmt_double(front_min) << '\n';
    sum << "coma_gap=" << fmt_double(result.baseline_best->coma - front_min) << '\n';
  } else {
    sum << "baseline_min_coma=none (no feasible baseline point)\n";
    sum << "front_min_coma=" << fmt_double(front_min) << '\n';
  }
  o.summary = sum.str();
  return o;
}

}  // namespace wncs::cli
