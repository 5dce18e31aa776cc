#pragma once

// Instance sources: TSPLIB files, the guitar assembly line, synthetic power
// grids, seeded random instances, and the native JSON document format.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hmwtpp/core_model.hpp"
#include "hmwtpp/costmodels.hpp"
#include "hmwtpp/graph.hpp"

namespace hmwtpp {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- TSPLIB ---------------------------------------------------------------

struct TsplibProblem {
  enum class WeightType { Euc2d, Att };
  std::string name;
  std::size_t dimension = 0;
  WeightType weight_type = WeightType::Euc2d;
  std::vector<Point2> coords;

  /// TSPLIB integer distance (nint for EUC_2D, pseudo-Euclidean for ATT).
  double distance(std::size_t i, std::size_t j) const;
};

TsplibProblem parse_tsplib(std::string_view text);
TsplibProblem load_tsplib(const std::string& path);

struct TsplibRecipe {
  std::size_t workers = 1;
  double speed = 10.0;
  std::size_t base_node = 0;
  /// Exact Euclidean distances by default; TSPLIB integer rounding on request.
  bool tsplib_rounding = false;
  // Random constraint injection (seeded): each incompatibility removes one
  // (task, worker) pair, keeping every task with at least one worker.
  std::size_t incompatibilities = 0;
  std::size_t order_pairs = 0;
  std::size_t precedence_pairs = 0;
  std::uint64_t seed = 1;
};

ProblemInstance tsplib_to_instance(const TsplibProblem& p, const TsplibRecipe& recipe = {});

// ---- Showcase instances ---------------------------------------------------

ProblemInstance build_guitar(bool waiting = false);

struct Tower {
  Id id;
  Point2 pos;
  bool operator==(const Tower&) const = default;
};
struct Segment {
  Id id;
  Id a;
  Id b;
  bool operator==(const Segment&) const = default;
};
struct GridBase {
  Id id;
  Point2 pos;
  bool operator==(const GridBase&) const = default;
};

struct PowerGrid {
  std::vector<Tower> towers;
  std::vector<Segment> segments;
  std::vector<GridBase> bases;
  std::vector<UavSpec> uavs;
  Wind wind;
  double orbit_radius = 10.0;

  bool operator==(const PowerGrid&) const = default;
  const Tower* find_tower(std::string_view id) const;
  const Segment* find_segment(std::string_view id) const;
  const GridBase* find_base(std::string_view id) const;
  const UavSpec* find_uav(std::string_view id) const;
};

struct GridSelection {
  std::vector<Id> towers;
  std::vector<Id> segments;
  bool operator==(const GridSelection&) const = default;
};

/// Selection of every tower and segment.
GridSelection select_all(const PowerGrid& g);

/// Throws FormatError on dangling ids, non-positive speeds or wind ≥ airspeed.
void check_grid(const PowerGrid& g);

/// Tower tasks have one approach ("orbit"); segment tasks two ("fwd" a→b,
/// "rev" b→a). VTOLs are incompatible with towers. Energy budget enabled.
ProblemInstance grid_to_instance(const PowerGrid& g, const GridSelection& sel);
Weigher make_grid_weigher(const PowerGrid& g);

/// Four towers equidistant from one base; `identical` equal multirotors and
/// one strictly slower one, listed last.
PowerGrid build_toomany(std::size_t identical = 4);

struct GridParams {
  std::size_t towers = 13;
  std::size_t segments = 12;
  std::size_t multirotors = 2;
  std::size_t vtols = 1;
  double spacing = 300.0;  // m between neighbouring towers
  double wind_speed = 0.0;
  double endurance = 1800.0;  // s of flight per full budget
};
PowerGrid gen_grid(const GridParams& params, std::uint64_t seed);

// ---- Random instances -----------------------------------------------------

struct RandomSpec {
  std::size_t tasks = 4;
  std::size_t workers = 2;
  std::size_t max_approaches = 1;
  double compat_density = 0.8;  // per (approach, worker)
  std::size_t precedence_pairs = 0;
  std::size_t order_pairs = 0;
  double max_execution = 20.0;
  double area = 100.0;
  bool shared_base = true;
};
ProblemInstance random_instance(const RandomSpec& spec, std::uint64_t seed);

// ---- Native document ------------------------------------------------------

struct InstanceDocument {
  ProblemInstance instance;
  std::optional<PowerGrid> grid;
  std::optional<GridSelection> selection;
  std::optional<std::uint64_t> seed;
  bool operator==(const InstanceDocument&) const = default;
};

InstanceDocument grid_document(const PowerGrid& g, const GridSelection& sel,
                               std::optional<std::uint64_t> seed = std::nullopt);

nlohmann::json to_json(const InstanceDocument& doc);
InstanceDocument document_from_json(const nlohmann::json& j);
std::string serialize(const InstanceDocument& doc);
InstanceDocument parse_document(std::string_view text);
InstanceDocument load_document(const std::string& path);

/// Grid-backed documents weigh edges with the cost models; the rest use the
/// instance's own travel and execution tables.
Weigher weigher_for(const InstanceDocument& doc);

/// GeoJSON FeatureCollection of the grid (planar metres in coordinates).
nlohmann::json grid_geojson(const PowerGrid& g);

}  // namespace hmwtpp
