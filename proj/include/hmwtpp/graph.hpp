#pragma once

// Weighted directed multigraph: one edge layer per worker over shared vertices
// (bases plus one vertex per task approach).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmwtpp/core_model.hpp"

namespace hmwtpp {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Vertex {
  enum class Kind { Base, Task };
  Kind kind = Kind::Base;
  Id base;                // Kind::Base
  TaskApproach approach;  // Kind::Task

  bool is_base() const { return kind == Kind::Base; }
  /// Stable textual label used in variable names and dumps: the base id, the
  /// task id for single-approach tasks, `task.approach` otherwise.
  std::string label;
};

/// Ω = Δω (transition) + ω (execution at the target vertex).
struct EdgeWeight {
  double transition = 0.0;
  double execution = 0.0;
  double total() const { return transition + execution; }
};

using WeightMap = std::map<std::string, EdgeWeight>;
using Weigher = std::function<WeightMap(const Worker&, const Vertex& from, const Vertex& to)>;
using EdgeFilter = std::function<bool(const Worker&, const Vertex& from, const Vertex& to)>;

struct Edge {
  std::size_t from = kNone;
  std::size_t to = kNone;
  std::size_t worker = kNone;
  WeightMap weights;

  /// Total weight Ω for a cost type; 0 when the type is not stored.
  double weight(std::string_view cost_type) const;
  const EdgeWeight* find(std::string_view cost_type) const;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MultiGraph {
 public:
  const ProblemInstance& instance() const { return instance_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Workers in deterministic (lexicographic id) order; indices used everywhere.
  const std::vector<Worker>& workers() const { return workers_; }

  std::size_t worker_index(std::string_view id) const;
  std::size_t vertex_index(const TaskApproach& ta) const;
  std::size_t base_vertex(std::string_view base_id) const;
  std::size_t base_of(std::size_t worker) const { return worker_base_[worker]; }

  std::optional<std::size_t> find_edge(std::size_t from, std::size_t to, std::size_t worker) const;
  /// Edge indices leaving / entering `u` in the layer of `worker`.
  const std::vector<std::size_t>& out_edges(std::size_t worker, std::size_t u) const;
  const std::vector<std::size_t>& in_edges(std::size_t worker, std::size_t u) const;
  /// δ₊ / δ₋ as vertex sets.
  std::vector<std::size_t> successors(std::size_t worker, std::size_t u) const;
  std::vector<std::size_t> predecessors(std::size_t worker, std::size_t u) const;

  /// T|_w: tasked vertices compatible with the worker, ascending.
  const std::vector<std::size_t>& task_vertices(std::size_t worker) const { return worker_tasks_[worker]; }
  /// T_τ: vertices of one task, ascending.
  const std::vector<std::size_t>& task_group(std::string_view task_id) const;
  const std::vector<std::size_t>& layer_edges(std::size_t worker) const { return layer_edges_[worker]; }

  /// Σ_{e∈E|_w} Ω^(μ)_e
  double layer_weight_sum(std::size_t worker, std::string_view cost_type) const;

 private:
  friend MultiGraph build_graph(const ProblemInstance&, const Weigher&, const EdgeFilter&);

  ProblemInstance instance_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Worker> workers_;
  std::vector<std::size_t> worker_base_;
  std::vector<std::vector<std::size_t>> worker_tasks_;
  std::vector<std::vector<std::size_t>> layer_edges_;
  std::map<std::string, std::vector<std::size_t>> task_groups_;
  std::map<TaskApproach, std::size_t> approach_vertex_;
  std::map<std::string, std::size_t, std::less<>> base_vertex_;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> edge_lookup_;
  std::vector<std::vector<std::vector<std::size_t>>> out_;
  std::vector<std::vector<std::vector<std::size_t>>> in_;
};

/// Builds G = (V, E, W). The instance must already pass validate_instance.
/// Throws GraphError when the weigher yields a non-finite value or a negative
/// time weight; the message names the offending edge.
MultiGraph build_graph(const ProblemInstance& inst, const Weigher& weigher,
                       const EdgeFilter& filter = {});

/// Weigher driven by the instance's own travel model and execution tables.
Weigher make_table_weigher(const ProblemInstance& inst);

/// Worst-case edge count with every approach compatible with every worker:
/// n_w · (2·n·n_a + n_a²·n·(n−1)).
std::uint64_t edge_count_bound(std::uint64_t n_workers, std::uint64_t n_tasks,
                               std::uint64_t n_approaches);

/// Plain-text dump (see docs/formats.md).
void write_graph_dump(const MultiGraph& g, std::ostream& os);

}  // namespace hmwtpp
