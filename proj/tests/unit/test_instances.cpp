#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"

using namespace hmwtpp;

namespace {

constexpr const char* kTwoNodes = R"(NAME : tri
TYPE : TSP
DIMENSION : 2
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 3 4
EOF
)";

PowerGrid one_tower_grid() {
  PowerGrid g;
  g.bases.push_back({"B", {0, 0}});
  g.towers.push_back({"P1", {300, 0}});
  g.uavs.push_back({"M1", UavType::Multirotor, "B", 10.0, 5.0, 0.0, 1.0 / 1800.0});
  return g;
}

}  // namespace

TEST_SUITE("instances") {

TEST_CASE("TSPLIB dimensions") {
  CHECK(load_tsplib(HMWTPP_DATA_DIR "/tsplib/eil51.vrp").dimension == 51);
  CHECK(load_tsplib(HMWTPP_DATA_DIR "/tsplib/eil22.vrp").dimension == 22);
  CHECK(load_tsplib(HMWTPP_DATA_DIR "/tsplib/eil22.vrp").coords.size() == 22);
}

TEST_CASE("TSPLIB distances") {
  TsplibProblem p = parse_tsplib(kTwoNodes);
  CHECK(p.name == "tri");
  CHECK(p.distance(0, 1) == 5.0);
  std::string att = kTwoNodes;
  att.replace(att.find("EUC_2D"), 6, "ATT");
  p = parse_tsplib(att);
  // pseudo-Euclidean: sqrt(25/10) = 1.58 → nint 2
  CHECK(p.distance(0, 1) == 2.0);
}

TEST_CASE("TSPLIB errors") {
  std::string bad = kTwoNodes;
  bad.replace(bad.find("EUC_2D"), 6, "GEO");
  CHECK_THROWS_WITH_AS(parse_tsplib(bad), doctest::Contains("EDGE_WEIGHT_TYPE"), FormatError);
  CHECK_THROWS_AS(parse_tsplib("NAME : x\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\n"), FormatError);
  CHECK_THROWS_AS(load_tsplib("/nonexistent.tsp"), FormatError);
}

TEST_CASE("TSPLIB to instance") {
  const TsplibProblem p = load_tsplib(HMWTPP_DATA_DIR "/tsplib/eil22.vrp");
  TsplibRecipe r;
  r.workers = 2;
  r.incompatibilities = 21;
  r.seed = 5;
  const ProblemInstance in = tsplib_to_instance(p, r);
  CHECK(in.tasks.size() == 21);
  CHECK(in.workers.size() == 2);
  CHECK(validate_instance(in).empty());
  std::size_t pairs = 0;
  for (const auto& w : in.workers) pairs += w.compatibility.size();
  CHECK(pairs == 2 * 21 - 21);
  // same seed, same instance
  CHECK(tsplib_to_instance(p, r) == in);
}

TEST_CASE("eil22: one worker at speed 10") {
  const ProblemInstance in = tsplib_to_instance(load_tsplib(HMWTPP_DATA_DIR "/tsplib/eil22.vrp"));
  const double obj = fixtures::solve_objective(in, SecMode::DfjLazy);
  CHECK(std::round(obj * 100) / 100 == 27.84);
}

TEST_CASE("doubling the speed halves the optimum") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    RandomSpec s;
    s.tasks = 4;
    s.workers = 2;
    ProblemInstance in = random_instance(s, seed);
    // travel only: execution does not scale with speed
    for (auto& t : in.tasks)
      for (auto& a : t.approaches)
        for (auto& [w, costs] : a.execution) costs["time"] = 0.0;
    const double slow = fixtures::solve_objective(in, SecMode::DfjLazy);
    for (auto& w : in.workers) w.speed *= 2;
    const double fast = fixtures::solve_objective(in, SecMode::DfjLazy);
    CHECK(fast == doctest::Approx(slow / 2).epsilon(1e-9));
  }
}

TEST_CASE("guitar fixture") {
  const ProblemInstance g = build_guitar();
  CHECK(g.tasks.size() == 6);
  CHECK(g.find_task("T5")->approaches.size() == 2);
  const ApproachSet wb = restrict(g.all_approaches(), *g.find_worker("wb"));
  CHECK(wb.count({"T1", "A"}) == 0);
  CHECK(wb.count({"T2", "A"}) == 0);
  CHECK(fixtures::solve_objective(build_guitar(false), SecMode::DfjLazy) == doctest::Approx(25210.0));
  CHECK(fixtures::solve_objective(build_guitar(true), SecMode::DfjLazy) == doctest::Approx(19805.0));
}

TEST_CASE("one multirotor, one tower: out, orbit, back") {
  const PowerGrid grid = one_tower_grid();
  const InstanceDocument doc = grid_document(grid, select_all(grid));
  const MultiGraph g = build_graph(doc.instance, weigher_for(doc));
  const MilpModel m = encode(g, EncodeOptions::from_instance(doc.instance, SecMode::DfjLazy));
  const SolveReport r = solve(m, g, Limits{});
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(2 * 300.0 / 10.0 + 2 * std::numbers::pi * 10.0 / 5.0).epsilon(1e-12));
  const Plan plan = extract_plan(r.x, g, m);
  CHECK(plan.workers[0].route.size() == 3);
}

TEST_CASE("a segment is flown in exactly one direction") {
  PowerGrid grid = one_tower_grid();
  grid.towers.push_back({"P2", {300, 200}});
  grid.segments.push_back({"S1", "P1", "P2"});
  const InstanceDocument doc = grid_document(grid, {{}, {"S1"}});
  const MultiGraph g = build_graph(doc.instance, weigher_for(doc));
  const MilpModel m = encode(g, EncodeOptions::from_instance(doc.instance, SecMode::DfjLazy));
  const SolveReport r = solve(m, g, Limits{});
  REQUIRE(r.status == SolveStatus::Optimal);
  const Plan plan = extract_plan(r.x, g, m);
  std::size_t visits = 0;
  for (const auto& w : plan.workers)
    for (std::size_t v : w.route) visits += !g.vertices()[v].is_base();
  CHECK(visits == 1);
}

TEST_CASE("the slower of five UAVs is left on the ground") {
  const PowerGrid grid = build_toomany();
  CHECK(grid.uavs.size() == 5);
  const InstanceDocument doc = grid_document(grid, select_all(grid));
  const MultiGraph g = build_graph(doc.instance, weigher_for(doc));
  const MilpModel m = encode(g, EncodeOptions::from_instance(doc.instance, SecMode::DfjLazy));
  const SolveReport r = solve(m, g, Limits{});
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.x[m.yb[g.worker_index("U5")]] < 0.5);
}

TEST_CASE("grid generation") {
  GridParams p;
  p.towers = 5;
  p.segments = 5;
  p.vtols = 1;
  const PowerGrid a = gen_grid(p, 7), b = gen_grid(p, 7);
  CHECK(a == b);
  CHECK(serialize(grid_document(a, select_all(a), 7)) == serialize(grid_document(b, select_all(b), 7)));
  CHECK(a.towers.size() == 5);
  CHECK(a.segments.size() == 5);
  CHECK_NOTHROW(check_grid(a));
  CHECK(!(gen_grid(p, 8) == a));
  p.towers = 0;
  p.segments = 0;
  CHECK_THROWS_WITH_AS(gen_grid(p, 1), doctest::Contains("empty selection"), std::invalid_argument);
}

TEST_CASE("grid instances: VTOLs skip towers, budget on") {
  GridParams p;
  p.towers = 3;
  p.segments = 2;
  p.vtols = 1;
  const PowerGrid grid = gen_grid(p, 3);
  const ProblemInstance in = grid_to_instance(grid, select_all(grid));
  CHECK(in.energy_budget);
  for (const auto& u : grid.uavs) {
    if (u.type != UavType::Vtol) continue;
    for (const auto& ta : in.find_worker(u.id)->compatibility) CHECK(grid.find_tower(ta.task) == nullptr);
  }
}

TEST_CASE("native documents round-trip") {
  std::vector<InstanceDocument> docs;
  InstanceDocument d;
  d.instance = build_guitar(true);
  d.instance.windows.push_back({"T3", 0.0, 9000.0});
  d.instance.order.push_back({std::string("wa"), "T1", "T2"});
  docs.push_back(d);
  RandomSpec s;
  s.tasks = 5;
  s.shared_base = false;
  s.precedence_pairs = 2;
  s.order_pairs = 2;
  d.instance = random_instance(s, 9);
  d.seed = 9;
  docs.push_back(d);
  GridParams gp;
  gp.towers = 4;
  gp.segments = 3;
  gp.wind_speed = 3.0;
  const PowerGrid grid = gen_grid(gp, 2);
  docs.push_back(grid_document(grid, select_all(grid), 2));
  for (const auto& doc : docs) {
    const std::string text = serialize(doc);
    const InstanceDocument back = parse_document(text);
    CHECK(back == doc);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_document("{"), FormatError);
  CHECK_THROWS_AS(parse_document(R"({"format": "something-else"})"), FormatError);
  CHECK_THROWS_AS(parse_document(R"({"format": "hmwtpp-instance", "version": 1, "locations": {"a": [1]}})"),
                  FormatError);
}

TEST_CASE("random instances are valid and reproducible") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const RandomSpec s = fixtures::suite_spec(seed);
    const ProblemInstance in = random_instance(s, seed);
    CHECK(validate_instance(in).empty());
    CHECK(random_instance(s, seed) == in);
  }
}

}  // TEST_SUITE
