#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"

using namespace hmwtpp;
using fixtures::line_instance;

TEST_SUITE("graph") {

TEST_CASE("1 worker, 2 tasks: 3 vertices, 6 edges") {
  const MultiGraph g = fixtures::graph_of(line_instance({{1, 0}, {0, 1}}));
  CHECK(g.vertices().size() == 3);
  CHECK(g.edges().size() == 6);
  // every ordered pair of distinct vertices exactly once
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) CHECK(g.find_edge(u, v, 0).has_value() == (u != v));
}

TEST_CASE("incompatible task has no edges in that worker's layer") {
  ProblemInstance in = line_instance({{1, 0}, {0, 1}}, 2);
  in.workers[1].compatibility.erase({"t2", "a"});
  const MultiGraph g = fixtures::graph_of(in);
  const std::size_t w2 = g.worker_index("w2");
  const std::size_t v2 = g.vertex_index({"t2", "a"});
  for (std::size_t e : g.layer_edges(w2)) {
    CHECK(g.edges()[e].from != v2);
    CHECK(g.edges()[e].to != v2);
  }
  CHECK(g.layer_edges(w2).size() == 2);
  CHECK(g.layer_edges(g.worker_index("w1")).size() == 6);
}

TEST_CASE("edge_count_bound") {
  CHECK(edge_count_bound(1, 2, 1) == 6);
  CHECK(edge_count_bound(1, 0, 1) == 0);
  CHECK(edge_count_bound(2, 3, 2) == 72);
}

TEST_CASE("edge_count_bound matches a fully compatible build") {
  for (std::uint64_t nw = 1; nw <= 3; ++nw)
    for (std::uint64_t n = 0; n <= 4; ++n)
      for (std::uint64_t na = 1; na <= 3; ++na) {
        ProblemInstance in;
        in.travel.kind = TravelModel::Kind::Uniform;
        in.travel.uniform_time = 1.0;
        in.bases.push_back({"b", std::nullopt});
        for (std::uint64_t t = 0; t < n; ++t) {
          Task task{"t" + std::to_string(t), {}, true};
          for (std::uint64_t a = 0; a < na; ++a) task.approaches.push_back({"a" + std::to_string(a), std::nullopt, {}});
          in.tasks.push_back(task);
        }
        for (std::uint64_t w = 0; w < nw; ++w) {
          Worker wk{"w" + std::to_string(w), "b", in.all_approaches(), 1.0, 0.0};
          in.workers.push_back(wk);
        }
        const MultiGraph g = fixtures::graph_of(in);
        // hand count: per worker, base↔approach both ways, approach→approach of other tasks
        const std::uint64_t per_worker = 2 * n * na + na * na * n * (n == 0 ? 0 : n - 1);
        CHECK(g.edges().size() == nw * per_worker);
        CHECK(edge_count_bound(nw, n, na) == nw * per_worker);
      }
}

TEST_CASE("edge weights are transition plus target execution") {
  const ProblemInstance in = line_instance({{3, 4}}, 1, 7.0);
  const MultiGraph g = fixtures::graph_of(in);
  const std::size_t b = g.base_vertex("b");
  const std::size_t t = g.vertex_index({"t1", "a"});
  const Edge& out = g.edges()[*g.find_edge(b, t, 0)];
  const Edge& back = g.edges()[*g.find_edge(t, b, 0)];
  CHECK(out.weight("time") == doctest::Approx(12.0));
  CHECK(back.weight("time") == doctest::Approx(5.0));
}

TEST_CASE("negative weight is rejected with the edge named") {
  const ProblemInstance in = line_instance({{1, 0}});
  Weigher bad = [](const Worker&, const Vertex&, const Vertex&) {
    return WeightMap{{"time", EdgeWeight{-1.0, 0.0}}};
  };
  CHECK_THROWS_AS(build_graph(in, bad), GraphError);
}

TEST_CASE("guitar graph") {
  const MultiGraph g = fixtures::graph_of(build_guitar());
  CHECK(g.vertices().size() == 8);
  CHECK(g.task_group("T5").size() == 2);
  std::ostringstream os;
  write_graph_dump(g, os);
  CHECK(os.str().find("T5.B") != std::string::npos);
}

}  // TEST_SUITE
