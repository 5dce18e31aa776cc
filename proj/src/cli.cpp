#include "hmwtpp/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hmwtpp/instances.hpp"
#include "hmwtpp/routes.hpp"
#include "hmwtpp/solver.hpp"

namespace hmwtpp {

namespace {

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void configure_logging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::get("hmwtpp");
  if (!logger) logger = spdlog::stderr_color_mt("hmwtpp");
  spdlog::set_default_logger(logger);
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("HMWTPP_LOG")) level = spdlog::level::from_str(env);
  spdlog::set_level(level);
}

struct InstanceArgs {
  std::string path;
  std::size_t workers = 1;
  bool tsplib_rounding = false;
  std::size_t incompatibilities = 0;
  std::size_t order_pairs = 0;
  std::size_t precedence_pairs = 0;
  bool waiting = false;
  bool energy = false;

  void add_to(CLI::App* app) {
    app->add_option("instance", path, "Instance file: native JSON, or TSPLIB (.tsp/.vrp)")->required();
    app->add_option("--workers", workers, "TSPLIB: number of identical workers")->check(CLI::PositiveNumber);
    app->add_flag("--tsplib-rounding", tsplib_rounding, "TSPLIB: integer (nint/ATT) distances instead of exact");
    app->add_option("--incompatibilities", incompatibilities, "TSPLIB: random (task, worker) removals");
    app->add_option("--order-pairs", order_pairs, "TSPLIB: random order pairs");
    app->add_option("--precedence-pairs", precedence_pairs, "TSPLIB: random precedence pairs");
    app->add_flag("--waiting", waiting, "Enable waiting points");
    app->add_flag("--energy-budget", energy, "Enforce the per-worker energy budget");
  }
};

bool has_suffix(const std::string& s, std::string_view suf) {
  return s.size() >= suf.size() && std::equal(suf.rbegin(), suf.rend(), s.rbegin(),
                                               [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

InstanceDocument load_instance(const InstanceArgs& a, std::uint64_t seed) {
  InstanceDocument doc;
  try {
    if (has_suffix(a.path, ".json")) {
      doc = load_document(a.path);
    } else {
      TsplibRecipe r;
      r.workers = a.workers;
      r.tsplib_rounding = a.tsplib_rounding;
      r.incompatibilities = a.incompatibilities;
      r.order_pairs = a.order_pairs;
      r.precedence_pairs = a.precedence_pairs;
      r.seed = seed;
      doc.instance = tsplib_to_instance(load_tsplib(a.path), r);
      doc.seed = seed;
    }
  } catch (const FormatError& e) {
    throw BadInput(a.path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw BadInput(a.path + ": " + e.what());
  }
  if (a.waiting) doc.instance.waiting_points = true;
  if (a.energy) doc.instance.energy_budget = true;
  const auto defects = validate_instance(doc.instance);
  if (!defects.empty()) {
    std::string msg = a.path + ": invalid instance";
    for (const auto& d : defects) msg += "\n  " + std::string(to_string(d.kind)) + ": " + d.message;
    throw BadInput(msg);
  }
  return doc;
}

MultiGraph make_graph(const InstanceDocument& doc) {
  try {
    return build_graph(doc.instance, weigher_for(doc));
  } catch (const GraphError& e) {
    throw BadInput(e.what());
  } catch (const CostModelError& e) {
    throw BadInput(e.what());
  }
}

struct ModelArgs {
  std::string sec = "dfj";
  std::string objective = "mtm";

  void add_to(CLI::App* app) {
    app->add_option("--sec", sec, "Subtour elimination: dfj (lazy cuts) or mtz")
        ->check(CLI::IsMember({"dfj", "mtz"}));
    app->add_option("--objective", objective, "mtm (min-max route time) or total")
        ->check(CLI::IsMember({"mtm", "total"}));
  }

  EncodeOptions options(const ProblemInstance& inst) const {
    EncodeOptions o = EncodeOptions::from_instance(inst, sec == "mtz" ? SecMode::Mtz : SecMode::DfjLazy);
    o.objective = objective == "total" ? ObjectiveKind::TotalTime : ObjectiveKind::Mtm;
    return o;
  }
};

MilpModel make_model(const MultiGraph& g, const EncodeOptions& o) {
  try {
    return encode(g, o);
  } catch (const EncodeError& e) {
    throw BadInput(e.what());
  }
}

void write_model_file(const MilpModel& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw BadInput("cannot write '" + path + "'");
  if (has_suffix(path, ".mps")) {
    write_mps(m, os);
  } else {
    write_lp(m, os);
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw BadInput("cannot write '" + path + "'");
  return os;
}

void print_findings(const ValidationReport& rep, std::ostream& os) {
  os << "validation: " << (rep.passed() ? "pass" : "fail") << '\n';
  for (const auto& f : rep.findings) os << "  " << to_string(f.family) << ": " << f.message << '\n';
}

int cmd_solve(const InstanceArgs& ia, const ModelArgs& ma, double time_limit, double gap, std::uint64_t seed,
              const std::string& export_lp, const std::string& out_path, const std::string& geojson_path,
              std::ostream& out) {
  const InstanceDocument doc = load_instance(ia, seed);
  const MultiGraph g = make_graph(doc);
  const MilpModel m = make_model(g, ma.options(doc.instance));
  if (!export_lp.empty()) write_model_file(m, export_lp);

  Limits lim;
  lim.time_limit = time_limit;
  lim.gap = gap;
  const SolveReport rep = solve(m, g, lim);

  out << "instance: " << (doc.instance.name.empty() ? ia.path : doc.instance.name) << '\n';
  out << "seed: " << seed << '\n';
  out << "sec: " << ma.sec << '\n';
  out << "objective_kind: " << ma.objective << '\n';
  out << "variables: " << m.vars.size() << '\n';
  out << "rows: " << m.rows.size() << '\n';
  write_report(rep, out);

  if (rep.has_incumbent) {
    Plan plan;
    try {
      plan = extract_plan(rep.x, g, m);
    } catch (const PlanError& e) {
      out << "validation: fail\n  extraction: " << e.what() << '\n';
      return kExitValidationFailed;
    }
    const ValidationReport vr = validate_plan(plan, doc.instance, g);
    print_findings(vr, out);
    if (!out_path.empty()) {
      auto os = open_out(out_path);
      write_plan(plan, g, os);
    } else {
      write_plan(plan, g, out);
    }
    if (!geojson_path.empty()) {
      if (!doc.grid) throw BadInput("--geojson needs a grid instance");
      auto os = open_out(geojson_path);
      os << plan_geojson(plan, g, *doc.grid).dump(2) << '\n';
    }
    if (!vr.passed()) return kExitValidationFailed;
  }

  switch (rep.status) {
    case SolveStatus::Optimal: return kExitOptimal;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::TimeLimit:
    case SolveStatus::NodeLimit:
    case SolveStatus::IterationCap:
      return rep.has_incumbent ? kExitTimeoutIncumbent : kExitTimeoutNoIncumbent;
    case SolveStatus::Numerical: return kExitInternal;
  }
  return kExitInternal;
}

int cmd_validate(const InstanceArgs& ia, const std::string& plan_path, std::uint64_t seed, std::ostream& out) {
  const InstanceDocument doc = load_instance(ia, seed);
  const MultiGraph g = make_graph(doc);
  std::ifstream is(plan_path);
  if (!is) throw BadInput("cannot read '" + plan_path + "'");
  Plan plan;
  try {
    plan = read_plan(g, is);
  } catch (const PlanError& e) {
    throw BadInput(plan_path + ": " + e.what());
  }
  const ValidationReport vr = validate_plan(plan, doc.instance, g);
  print_findings(vr, out);
  return vr.passed() ? kExitOptimal : kExitValidationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_logging();

  CLI::App app{"Heterogeneous multi-worker task planner", "hmwtpp"};
  app.require_subcommand(1);

  InstanceArgs ia;
  ModelArgs ma;
  double time_limit = 600.0;
  double gap = 0.0;
  std::uint64_t seed = 1;
  std::string export_lp, out_path, geojson_path, plan_path, mps_path;

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print report and plan");
  ia.add_to(solve_cmd);
  ma.add_to(solve_cmd);
  solve_cmd->add_option("--time-limit", time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--gap", gap, "Relative optimality gap")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--seed", seed, "Seed for generated constraints");
  solve_cmd->add_option("--export-lp", export_lp, "Also write the model (.lp, or .mps by suffix)");
  solve_cmd->add_option("--out", out_path, "Write the plan here instead of stdout");
  solve_cmd->add_option("--geojson", geojson_path, "Grid instances: write routes as GeoJSON");

  InstanceArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "Check a plan against an instance");
  va.add_to(validate_cmd);
  validate_cmd->add_option("plan", plan_path, "Plan file")->required();
  validate_cmd->add_option("--seed", seed, "Seed for generated constraints");

  InstanceArgs ea;
  ModelArgs em;
  auto* export_cmd = app.add_subcommand("export", "Write the MILP as LP and/or MPS");
  ea.add_to(export_cmd);
  em.add_to(export_cmd);
  export_cmd->add_option("--export-lp", export_lp, "LP file path");
  export_cmd->add_option("--mps", mps_path, "MPS file path");
  export_cmd->add_option("--seed", seed, "Seed for generated constraints");

  GridParams gp;
  auto* grid_cmd = app.add_subcommand("gen-grid", "Generate a synthetic power-grid instance");
  grid_cmd->add_option("--towers", gp.towers, "Tower count");
  grid_cmd->add_option("--segments", gp.segments, "Line segment count");
  grid_cmd->add_option("--multirotors", gp.multirotors, "Multirotor count");
  grid_cmd->add_option("--vtols", gp.vtols, "VTOL count");
  grid_cmd->add_option("--spacing", gp.spacing, "Metres between neighbouring towers")->check(CLI::PositiveNumber);
  grid_cmd->add_option("--wind", gp.wind_speed, "Wind speed, m/s")->check(CLI::NonNegativeNumber);
  grid_cmd->add_option("--endurance", gp.endurance, "Seconds of flight per full budget")->check(CLI::PositiveNumber);
  grid_cmd->add_option("--seed", seed, "Generator seed");
  grid_cmd->add_option("--out", out_path, "Instance JSON path (stdout if omitted)");
  grid_cmd->add_option("--geojson", geojson_path, "Also write the grid as GeoJSON");

  InstanceArgs ga;
  auto* graph_cmd = app.add_subcommand("graph", "Dump the weighted multigraph");
  ga.add_to(graph_cmd);
  graph_cmd->add_option("--out", out_path, "Dump path (stdout if omitted)");
  graph_cmd->add_option("--seed", seed, "Seed for generated constraints");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOptimal;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  try {
    if (*solve_cmd) {
      return cmd_solve(ia, ma, time_limit, gap, seed, export_lp, out_path, geojson_path, out);
    }
    if (*validate_cmd) return cmd_validate(va, plan_path, seed, out);
    if (*export_cmd) {
      if (export_lp.empty() && mps_path.empty()) throw BadInput("export needs --export-lp and/or --mps");
      const InstanceDocument doc = load_instance(ea, seed);
      const MultiGraph g = make_graph(doc);
      const MilpModel m = make_model(g, em.options(doc.instance));
      if (!export_lp.empty()) write_model_file(m, export_lp);
      if (!mps_path.empty()) {
        auto os = open_out(mps_path);
        write_mps(m, os);
      }
      out << "variables: " << m.vars.size() << "\nrows: " << m.rows.size() << '\n';
      return kExitOptimal;
    }
    if (*grid_cmd) {
      PowerGrid grid;
      try {
        grid = gen_grid(gp, seed);
      } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
      } catch (const FormatError& e) {
        throw BadInput(e.what());
      }
      const std::string text = serialize(grid_document(grid, select_all(grid), seed));
      if (out_path.empty()) {
        out << text;
      } else {
        auto os = open_out(out_path);
        os << text;
      }
      if (!geojson_path.empty()) {
        auto os = open_out(geojson_path);
        os << grid_geojson(grid).dump(2) << '\n';
      }
      return kExitOptimal;
    }
    if (*graph_cmd) {
      const InstanceDocument doc = load_instance(ga, seed);
      const MultiGraph g = make_graph(doc);
      if (out_path.empty()) {
        write_graph_dump(g, out);
      } else {
        auto os = open_out(out_path);
        write_graph_dump(g, os);
      }
      return kExitOptimal;
    }
  } catch (const BadInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace hmwtpp
