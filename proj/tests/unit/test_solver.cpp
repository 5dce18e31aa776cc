#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "hmwtpp/lp.hpp"

using namespace hmwtpp;
using fixtures::line_instance;

namespace {

// Vertex enumeration for 2-variable LPs: every intersection of two boundary
// lines (rows at either side, column bounds) that is feasible.
double vertex_oracle(const LpProblem& p) {
  struct Line { double a, b, c; };  // a x + b y = c
  std::vector<Line> lines;
  for (std::size_t j = 0; j < 2; ++j) {
    const double e[2] = {j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0};
    lines.push_back({e[0], e[1], p.col_lb()[j]});
    lines.push_back({e[0], e[1], p.col_ub()[j]});
  }
  auto coef = [&](std::size_t i, std::size_t j) {
    for (auto [c, v] : p.row(i))
      if (static_cast<std::size_t>(c) == j) return v;
    return 0.0;
  };
  for (std::size_t i = 0; i < p.num_rows(); ++i)
    for (double side : {p.row_lo()[i], p.row_hi()[i]})
      if (std::isfinite(side)) lines.push_back({coef(i, 0), coef(i, 1), side});
  double best = INFINITY;
  for (std::size_t u = 0; u < lines.size(); ++u)
    for (std::size_t v = u + 1; v < lines.size(); ++v) {
      const double det = lines[u].a * lines[v].b - lines[u].b * lines[v].a;
      if (std::abs(det) < 1e-12) continue;
      const double x = (lines[u].c * lines[v].b - lines[u].b * lines[v].c) / det;
      const double y = (lines[u].a * lines[v].c - lines[u].c * lines[v].a) / det;
      bool ok = x >= p.col_lb()[0] - 1e-9 && x <= p.col_ub()[0] + 1e-9 && y >= p.col_lb()[1] - 1e-9 &&
                y <= p.col_ub()[1] + 1e-9;
      for (std::size_t i = 0; ok && i < p.num_rows(); ++i) {
        const double act = coef(i, 0) * x + coef(i, 1) * y;
        ok = act >= p.row_lo()[i] - 1e-9 && act <= p.row_hi()[i] + 1e-9;
      }
      if (ok) best = std::min(best, p.cost()[0] * x + p.cost()[1] * y);
    }
  return best;
}

LpProblem relaxation(const MilpModel& m) {
  LpProblem p;
  std::vector<double> c(m.vars.size(), 0.0);
  for (const auto& t : m.objective) c[t.var] += t.coef;
  for (std::size_t j = 0; j < m.vars.size(); ++j) p.add_col(c[j], m.vars[j].lb, m.vars[j].ub);
  for (const auto& r : m.rows) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (const auto& t : r.terms) terms.emplace_back(t.var, t.coef);
    p.add_row(terms, r.sense == Sense::Le ? -kInf : r.rhs, r.sense == Sense::Ge ? kInf : r.rhs);
  }
  return p;
}

// Costs 1 along b→t1→…→tn→b and 10 on every other edge.
Weigher ring_weigher() {
  return [](const Worker&, const Vertex& from, const Vertex& to) {
    auto index = [](const Vertex& v) { return v.is_base() ? 0 : std::stoi(v.approach.task.substr(1)); };
    const int a = index(from), b = index(to);
    const bool next = (b == a + 1) || (b == 0 && a == 4);
    return WeightMap{{"time", EdgeWeight{next ? 1.0 : 10.0, 0.0}}};
  };
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("tight single constraint") {
  LpProblem p;
  p.add_col(1, 0, 1);
  p.add_col(1, 0, 1);
  p.add_row({{0, 1}, {1, 1}}, 1, kInf);
  const LpSolution s = solve_lp(p);
  CHECK(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1.0));
}

TEST_CASE("contradictory bounds are infeasible") {
  LpProblem p;
  p.add_col(1, -10, 10);
  p.add_row({{0, 1}}, 2, kInf);
  p.add_row({{0, 1}}, -kInf, 1);
  CHECK(solve_lp(p).status == LpStatus::Infeasible);
}

TEST_CASE("random 2-variable LPs match vertex enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(-5, 5);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LpProblem p;
    p.add_col(std::round(U(rng)), -std::round(std::abs(U(rng))) - 1, std::round(std::abs(U(rng))) + 1);
    p.add_col(std::round(U(rng)), -std::round(std::abs(U(rng))) - 1, std::round(std::abs(U(rng))) + 1);
    const int rows = 1 + trial % 4;
    for (int i = 0; i < rows; ++i) {
      const double lo = std::round(U(rng));
      const bool two_sided = trial % 3 == 0;
      p.add_row({{0, std::round(U(rng))}, {1, std::round(U(rng))}}, lo, two_sided ? lo + 3 : kInf);
    }
    const double oracle = vertex_oracle(p);
    const LpSolution s = solve_lp(p);
    if (std::isinf(oracle)) {
      CHECK(s.status == LpStatus::Infeasible);
    } else {
      ++feasible;
      REQUIRE(s.status == LpStatus::Optimal);
      CHECK(s.objective == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
  CHECK(feasible > 50);
}

TEST_CASE("warm start after tightening a bound") {
  LpProblem p;
  p.add_col(-1, 0, 4);
  p.add_col(-1, 0, 4);
  p.add_row({{0, 1}, {1, 2}}, -kInf, 6);
  DualSimplex ds(p);
  CHECK(ds.solve().objective == doctest::Approx(-5.0));
  ds.set_col_bounds(0, 0, 1);
  CHECK(ds.solve().objective == doctest::Approx(-3.5));
}

}  // TEST_SUITE

TEST_SUITE("solver") {

TEST_CASE("relaxation bounds the integer optimum from below") {
  const MultiGraph g = fixtures::graph_of(line_instance({{1, 0}, {0, 1}}));
  const MilpModel m = encode(g, EncodeOptions::from_instance(g.instance(), SecMode::Mtz));
  const LpSolution lp = solve_lp(relaxation(m));
  const SolveReport r = solve_milp(m, Limits{});
  REQUIRE(lp.status == LpStatus::Optimal);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(lp.objective <= r.objective + 1e-9);
  CHECK(r.objective == doctest::Approx(2.0 + std::sqrt(2.0)));
}

TEST_CASE("guitar") {
  for (auto sec : {SecMode::DfjLazy, SecMode::Mtz}) {
    CHECK(fixtures::solve_objective(build_guitar(false), sec) == doctest::Approx(25210.0).epsilon(1e-9));
    const ProblemInstance in = build_guitar(true);
    const MultiGraph g = fixtures::graph_of(in);
    const MilpModel m = encode(g, EncodeOptions::from_instance(in, sec));
    const SolveReport r = solve(m, g, Limits{});
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective == doctest::Approx(19805.0).epsilon(1e-9));
    CHECK(r.x[m.wp[g.worker_index("wa")]] == doctest::Approx(7195.0).epsilon(1e-9));
  }
}

TEST_CASE("empty task list: objective 0, everyone inactive") {
  ProblemInstance in = line_instance({}, 3);
  const MultiGraph g = fixtures::graph_of(in);
  const MilpModel m = encode(g, EncodeOptions::from_instance(in, SecMode::Mtz));
  const SolveReport r = solve(m, g, Limits{});
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.objective == 0.0);
  for (std::size_t v : m.yb) CHECK(r.x[v] == 0.0);
}

TEST_CASE("subtour separation") {
  const MultiGraph g = fixtures::graph_of(line_instance({{1, 0}, {0, 1}, {1, 1}, {2, 2}, {3, 1}}, 2));
  const MilpModel m = encode(g, EncodeOptions::from_instance(g.instance(), SecMode::DfjLazy));
  const std::size_t b = g.base_vertex("b");
  auto v = [&](const char* t) { return g.vertex_index({t, "a"}); };
  auto set = [&](std::vector<double>& x, std::size_t w, std::vector<std::size_t> cyc) {
    for (std::size_t k = 0; k < cyc.size(); ++k) x[m.z[*g.find_edge(cyc[k], cyc[(k + 1) % cyc.size()], w)]] = 1;
  };

  SUBCASE("valid tour") {
    std::vector<double> x(m.vars.size(), 0.0);
    set(x, 0, {b, v("t1"), v("t2"), v("t3"), v("t4"), v("t5")});
    CHECK(separate_subtours(x, g, m).empty());
  }
  SUBCASE("3-cycle off the base") {
    std::vector<double> x(m.vars.size(), 0.0);
    set(x, 0, {b, v("t1"), v("t2")});
    set(x, 0, {v("t3"), v("t4"), v("t5")});
    const auto s = separate_subtours(x, g, m);
    REQUIRE(s.size() == 1);
    CHECK(s[0].worker == 0);
    CHECK(s[0].vertices == std::vector<std::size_t>{v("t3"), v("t4"), v("t5")});
  }
  SUBCASE("one 2-cycle per worker") {
    std::vector<double> x(m.vars.size(), 0.0);
    set(x, 0, {b, v("t1")});
    set(x, 0, {v("t2"), v("t3")});
    set(x, 1, {b, v("t4")});
    set(x, 1, {v("t5"), v("t1")});
    const auto s = separate_subtours(x, g, m);
    REQUIRE(s.size() == 2);
    CHECK(s[0].worker != s[1].worker);
  }
}

TEST_CASE("fractional separation finds a violated set") {
  const MultiGraph g = fixtures::graph_of(line_instance({{1, 0}, {0, 1}, {1, 1}, {2, 2}}));
  const MilpModel m = encode(g, EncodeOptions::from_instance(g.instance(), SecMode::DfjLazy));
  auto v = [&](const char* t) { return g.vertex_index({t, "a"}); };
  const std::size_t b = g.base_vertex("b");
  std::vector<double> x(m.vars.size(), 0.0);
  // half a tour through everything, half a base tour plus a detached pair
  for (auto [p, q] : {std::pair{b, v("t1")}, {v("t1"), v("t2")}, {v("t2"), v("t3")}, {v("t3"), v("t4")}, {v("t4"), b}})
    x[m.z[*g.find_edge(p, q, 0)]] += 0.5;
  for (auto [p, q] : {std::pair{b, v("t1")}, {v("t1"), v("t2")}, {v("t2"), b}, {v("t3"), v("t4")}, {v("t4"), v("t3")}})
    x[m.z[*g.find_edge(p, q, 0)]] += 0.5;
  const auto cuts = separate_fractional(x, g, m);
  REQUIRE(!cuts.empty());
  for (const auto& c : cuts) CHECK(c.violation(x) > 1e-3);
  // an integral tour admits none
  std::vector<double> tour(m.vars.size(), 0.0);
  for (auto [p, q] : {std::pair{b, v("t1")}, {v("t1"), v("t2")}, {v("t2"), v("t3")}, {v("t3"), v("t4")}, {v("t4"), b}})
    tour[m.z[*g.find_edge(p, q, 0)]] = 1;
  CHECK(separate_fractional(tour, g, m).empty());
}

TEST_CASE("eil22 with lazy cuts") {
  const ProblemInstance in = tsplib_to_instance(load_tsplib(HMWTPP_DATA_DIR "/tsplib/eil22.vrp"));
  const MultiGraph g = fixtures::graph_of(in);
  const MilpModel m = encode(g, EncodeOptions::from_instance(in, SecMode::DfjLazy));
  const SolveReport r = dfj_loop(m, g, Limits{});
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(std::round(r.objective * 100) / 100 == 27.84);
  CHECK(r.rounds.size() > 1);
}

TEST_CASE("relaxation already a tour: one round, no cuts") {
  const ProblemInstance in = line_instance({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  const MultiGraph g = build_graph(in, ring_weigher());
  const MilpModel m = encode(g, EncodeOptions::from_instance(in, SecMode::DfjLazy));
  const SolveReport r = dfj_loop(m, g, Limits{});
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.rounds.size() == 1);
  CHECK(r.cuts_added == 0);
  CHECK(r.objective == doctest::Approx(5.0));
}

TEST_CASE("two clusters, two workers: cut rounds, then the brute-force optimum") {
  const ProblemInstance in = line_instance({{20, 0}, {21, 0}, {20, 1}, {-20, 0}, {-21, 0}, {-20, 1}}, 2);
  const MultiGraph g = fixtures::graph_of(in);
  const MilpModel m = encode(g, EncodeOptions::from_instance(in, SecMode::DfjLazy));
  const SolveReport r = dfj_loop(m, g, Limits{});
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.rounds.size() >= 2);
  CHECK(r.rounds.front().cuts >= 1);
  const auto bf = brute_force(in, g);
  REQUIRE(bf);
  CHECK(r.objective == doctest::Approx(bf->objective).epsilon(1e-9));
}

TEST_CASE("time limit without incumbent") {
  const ProblemInstance in = tsplib_to_instance(load_tsplib(HMWTPP_DATA_DIR "/tsplib/eil51.vrp"));
  const MultiGraph g = fixtures::graph_of(in);
  const MilpModel m = encode(g, EncodeOptions::from_instance(in, SecMode::Mtz));
  Limits lim;
  lim.time_limit = 1e-3;
  const SolveReport r = solve(m, g, lim);
  CHECK(r.status == SolveStatus::TimeLimit);
}

TEST_CASE("solution text round trip") {
  const MultiGraph g = fixtures::graph_of(build_guitar(true));
  const MilpModel m = encode(g, EncodeOptions::from_instance(g.instance(), SecMode::Mtz));
  const SolveReport r = solve(m, g, Limits{});
  std::stringstream ss;
  write_solution(m, r.x, ss);
  const auto back = read_solution(m, ss);
  REQUIRE(back.size() == r.x.size());
  CHECK(m.objective_value(back) == doctest::Approx(19805.0));
}

TEST_CASE("strengthened model keeps every brute-force optimum feasible") {
  // Reach cuts and the tightened partial-cost rows must not cut off a true
  // optimum; brute force supplies one independently of the solver.
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    ProblemInstance in = random_instance(fixtures::suite_spec(seed, 5, 2), seed);
    in.waiting_points = seed % 3 == 0;
    const MultiGraph g = fixtures::graph_of(in);
    const auto bf = brute_force(in, g);
    if (!bf) continue;
    for (auto sec : {SecMode::DfjLazy, SecMode::Mtz}) {
      const MilpModel m = encode(g, EncodeOptions::from_instance(in, sec));
      MilpModel strong = m;
      tighten_partial_costs(g, strong);
      const auto cuts = reach_cuts(g, m);
      for (const auto& c : cuts) strong.add_row(c);
      const std::vector<double> x = plan_to_solution(*bf, g, m);
      CHECK(strong.max_violation(x) <= 1e-6);
      ++checked;
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("reach cuts: one per mandatory task, MTM only") {
  const ProblemInstance in = line_instance({{3, 4}, {6, 8}}, 2, 1.0);
  const MultiGraph g = fixtures::graph_of(in);
  EncodeOptions o = EncodeOptions::from_instance(in, SecMode::DfjLazy);
  const MilpModel m = encode(g, o);
  const auto cuts = reach_cuts(g, m);
  REQUIRE(cuts.size() == 2);
  // t2 at distance 10: out, execute, back = 10 + 1 + 10 for either worker.
  for (const auto& t : cuts[1].terms) {
    if (t.var != m.msigma) CHECK(t.coef == doctest::Approx(21.0));
  }
  o.objective = ObjectiveKind::TotalTime;
  CHECK(reach_cuts(g, encode(g, o)).empty());
}

TEST_CASE("tightening shrinks the partial-cost big-M") {
  ProblemInstance in = line_instance({{3, 4}, {6, 8}, {0, 5}}, 2, 1.0);
  in.precedence.push_back({"t1", "t2"});
  const MultiGraph g = fixtures::graph_of(in);
  const MilpModel m = encode(g, EncodeOptions::from_instance(in, SecMode::Mtz));
  MilpModel strong = m;
  tighten_partial_costs(g, strong);
  bool smaller = false;
  for (std::size_t j = 0; j < m.vars.size(); ++j) {
    CHECK(strong.vars[j].ub <= m.vars[j].ub);
    smaller |= strong.vars[j].ub < m.vars[j].ub;
  }
  CHECK(smaller);
  CHECK(strong.rows.size() == m.rows.size());
}

TEST_CASE("branching rules agree on the optimum") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const ProblemInstance in = random_instance(fixtures::suite_spec(seed, 5, 3), seed);
    const MultiGraph g = fixtures::graph_of(in);
    const MilpModel m = encode(g, EncodeOptions::from_instance(in, SecMode::Mtz));
    Limits a, b;
    b.branching = Branching::MostFractional;
    const SolveReport ra = solve(m, g, a), rb = solve(m, g, b);
    REQUIRE(ra.status == rb.status);
    if (ra.status == SolveStatus::Optimal) CHECK(ra.objective == doctest::Approx(rb.objective).epsilon(1e-9));
  }
}

}  // TEST_SUITE
