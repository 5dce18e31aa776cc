#include "hmwtpp/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace hmwtpp {

namespace {

// Portable draws on top of mt19937_64 (the std distributions are not
// specified bit-for-bit across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::size_t index(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
  bool chance(double p) { return uniform() < p; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Random pairs (before, after) that respect one hidden random permutation,
// hence acyclic.
std::vector<std::pair<Id, Id>> acyclic_pairs(const std::vector<Id>& ids, std::size_t count, Rng& rng) {
  std::vector<std::pair<Id, Id>> out;
  if (ids.size() < 2) return out;
  std::vector<Id> perm = ids;
  rng.shuffle(perm);
  std::set<std::pair<std::size_t, std::size_t>> used;
  const std::size_t max_pairs = ids.size() * (ids.size() - 1) / 2;
  while (out.size() < std::min(count, max_pairs)) {
    std::size_t i = rng.index(perm.size()), j = rng.index(perm.size());
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    if (!used.insert({i, j}).second) continue;
    out.push_back({perm[i], perm[j]});
  }
  return out;
}

}  // namespace

// ---- TSPLIB ---------------------------------------------------------------

double TsplibProblem::distance(std::size_t i, std::size_t j) const {
  const auto metric = weight_type == WeightType::Att ? TravelModel::Metric::Att : TravelModel::Metric::Nint;
  return planar_distance(metric, coords.at(i), coords.at(j));
}

TsplibProblem parse_tsplib(std::string_view text) {
  TsplibProblem p;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_dim = false, have_coords = false;
  std::string weight_type = "EUC_2D";
  std::size_t lineno = 0;

  auto is_keyword_line = [](const std::string& t) {
    if (t.empty()) return false;
    if (t == "EOF") return true;
    if (t.find(':') != std::string::npos) return true;
    return t.size() > 8 && t.find("_SECTION") != std::string::npos &&
           std::isalpha(static_cast<unsigned char>(t[0]));
  };

  std::string pending;
  auto next_line = [&](std::string& out) -> bool {
    if (!pending.empty()) {
      out = pending;
      pending.clear();
      return true;
    }
    if (!std::getline(in, line)) return false;
    ++lineno;
    out = trim(line);
    return true;
  };

  std::string t;
  while (next_line(t)) {
    if (t.empty()) continue;
    if (t == "EOF") break;
    if (t.rfind("NODE_COORD_SECTION", 0) == 0) {
      if (!have_dim) throw FormatError("NODE_COORD_SECTION before DIMENSION");
      p.coords.assign(p.dimension, Point2{});
      std::vector<char> seen(p.dimension, 0);
      for (std::size_t k = 0; k < p.dimension; ++k) {
        if (!next_line(t)) throw FormatError("NODE_COORD_SECTION ends after " + std::to_string(k) + " nodes");
        if (t.empty()) {
          --k;
          continue;
        }
        std::istringstream ls(t);
        long id = 0;
        double x = 0, y = 0;
        if (!(ls >> id >> x >> y)) throw FormatError("bad coordinate line " + std::to_string(lineno) + ": '" + t + "'");
        if (id < 1 || static_cast<std::size_t>(id) > p.dimension || seen[id - 1]) {
          throw FormatError("node id " + std::to_string(id) + " out of range or repeated");
        }
        seen[id - 1] = 1;
        p.coords[id - 1] = {x, y};
      }
      have_coords = true;
      continue;
    }
    if (t.find("_SECTION") != std::string::npos) {
      // Sections we do not use (demands, depots, tours): skip their body.
      while (next_line(t)) {
        if (is_keyword_line(t)) {
          pending = t;
          break;
        }
      }
      continue;
    }
    const auto colon = t.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = trim(std::string_view(t).substr(0, colon));
    const std::string value = trim(std::string_view(t).substr(colon + 1));
    if (key == "NAME") {
      p.name = value;
    } else if (key == "DIMENSION") {
      try {
        p.dimension = static_cast<std::size_t>(std::stoul(value));
      } catch (const std::exception&) {
        throw FormatError("bad DIMENSION '" + value + "'");
      }
      have_dim = true;
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = value;
    }
  }

  if (weight_type == "EUC_2D") {
    p.weight_type = TsplibProblem::WeightType::Euc2d;
  } else if (weight_type == "ATT") {
    p.weight_type = TsplibProblem::WeightType::Att;
  } else {
    throw FormatError("unsupported EDGE_WEIGHT_TYPE '" + weight_type + "'");
  }
  if (!have_coords) throw FormatError("missing NODE_COORD_SECTION");
  return p;
}

TsplibProblem load_tsplib(const std::string& path) { return parse_tsplib(read_file(path)); }

ProblemInstance tsplib_to_instance(const TsplibProblem& p, const TsplibRecipe& recipe) {
  if (recipe.base_node >= p.dimension) throw std::invalid_argument("base node index out of range");
  if (recipe.workers == 0) throw std::invalid_argument("at least one worker required");
  ProblemInstance inst;
  inst.name = p.name;
  inst.travel.kind = TravelModel::Kind::Euclidean;
  inst.travel.metric = !recipe.tsplib_rounding ? TravelModel::Metric::Exact
                       : p.weight_type == TsplibProblem::WeightType::Att ? TravelModel::Metric::Att
                                                                         : TravelModel::Metric::Nint;
  for (std::size_t i = 0; i < p.dimension; ++i) inst.locations["n" + std::to_string(i + 1)] = p.coords[i];
  inst.bases.push_back({"base", "n" + std::to_string(recipe.base_node + 1)});

  std::vector<Id> task_ids;
  for (std::size_t i = 0; i < p.dimension; ++i) {
    if (i == recipe.base_node) continue;
    const Id id = "n" + std::to_string(i + 1);
    Task t;
    t.id = id;
    t.approaches.push_back({"visit", id, {}});
    inst.tasks.push_back(std::move(t));
    task_ids.push_back(id);
  }
  for (std::size_t k = 0; k < recipe.workers; ++k) {
    Worker w;
    w.id = "w" + std::to_string(k + 1);
    w.base = "base";
    w.speed = recipe.speed;
    for (const auto& id : task_ids) w.compatibility.insert({id, "visit"});
    inst.workers.push_back(std::move(w));
  }

  Rng rng(recipe.seed);
  if (recipe.workers > 1) {
    std::size_t removed = 0, attempts = 0;
    while (removed < recipe.incompatibilities && attempts < 100 * (recipe.incompatibilities + 1)) {
      ++attempts;
      const Id& task = task_ids[rng.index(task_ids.size())];
      Worker& w = inst.workers[rng.index(inst.workers.size())];
      if (!w.compatibility.contains({task, "visit"})) continue;
      std::size_t holders = 0;
      for (const auto& o : inst.workers) holders += o.compatibility.contains({task, "visit"});
      if (holders < 2) continue;
      w.compatibility.erase({task, "visit"});
      ++removed;
    }
  }
  for (const auto& [a, b] : acyclic_pairs(task_ids, recipe.order_pairs, rng)) {
    inst.order.push_back({inst.workers[rng.index(inst.workers.size())].id, a, b});
  }
  for (const auto& [a, b] : acyclic_pairs(task_ids, recipe.precedence_pairs, rng)) {
    inst.precedence.push_back({a, b});
  }
  return inst;
}

// ---- Guitar ---------------------------------------------------------------

ProblemInstance build_guitar(bool waiting) {
  constexpr double h = 3600.0;
  ProblemInstance inst;
  inst.name = "guitar";
  inst.travel.kind = TravelModel::Kind::Uniform;
  inst.travel.uniform_time = 5.0;
  inst.travel.same_location_time = 0.0;
  inst.locations = {{"WB1", {0, 0}}, {"WB2", {1, 0}}, {"WB3", {2, 0}}};
  // The base sits at the final workbench.
  inst.bases.push_back({"base", "WB3"});

  auto single = [](Id id, Id wb, std::map<Id, double> times) {
    Task t;
    t.id = std::move(id);
    Approach a{"A", std::move(wb), {}};
    for (const auto& [w, v] : times) a.execution[w]["time"] = v;
    t.approaches.push_back(std::move(a));
    return t;
  };
  inst.tasks.push_back(single("T1", "WB1", {{"wa", 1 * h}}));
  inst.tasks.push_back(single("T2", "WB1", {{"wa", 1 * h}}));
  inst.tasks.push_back(single("T3", "WB2", {{"wb", 2 * h}}));
  inst.tasks.push_back(single("T4", "WB2", {{"wb", 2 * h}}));
  {
    Task t;
    t.id = "T5";
    Approach a{"A", "WB3", {}}, b{"B", "WB3", {}};
    a.execution["wa"]["time"] = 0.5 * h;
    a.execution["wb"]["time"] = 1 * h;
    b.execution["wa"]["time"] = 3 * h;
    b.execution["wb"]["time"] = 3 * h;
    t.approaches = {a, b};
    inst.tasks.push_back(std::move(t));
  }
  inst.tasks.push_back(single("T6", "WB3", {{"wa", 1 * h}, {"wb", 2 * h}}));

  Worker wa{"wa", "base", {}, 1.0, 0.0};
  Worker wb{"wb", "base", {}, 1.0, 0.0};
  for (const auto& t : inst.tasks) {
    for (const auto& a : t.approaches) {
      if (a.execution.contains("wa")) wa.compatibility.insert({t.id, a.id});
      if (a.execution.contains("wb")) wb.compatibility.insert({t.id, a.id});
    }
  }
  inst.workers = {wa, wb};
  inst.precedence = {{"T1", "T2"}, {"T3", "T4"}, {"T2", "T5"}, {"T4", "T5"}, {"T5", "T6"}};
  inst.waiting_points = waiting;
  return inst;
}

// ---- Power grids ----------------------------------------------------------

const Tower* PowerGrid::find_tower(std::string_view id) const {
  for (const auto& t : towers) {
    if (t.id == id) return &t;
  }
  return nullptr;
}
const Segment* PowerGrid::find_segment(std::string_view id) const {
  for (const auto& s : segments) {
    if (s.id == id) return &s;
  }
  return nullptr;
}
const GridBase* PowerGrid::find_base(std::string_view id) const {
  for (const auto& b : bases) {
    if (b.id == id) return &b;
  }
  return nullptr;
}
const UavSpec* PowerGrid::find_uav(std::string_view id) const {
  for (const auto& u : uavs) {
    if (u.id == id) return &u;
  }
  return nullptr;
}

GridSelection select_all(const PowerGrid& g) {
  GridSelection s;
  for (const auto& t : g.towers) s.towers.push_back(t.id);
  for (const auto& sg : g.segments) s.segments.push_back(sg.id);
  return s;
}

void check_grid(const PowerGrid& g) {
  for (const auto& s : g.segments) {
    if (!g.find_tower(s.a) || !g.find_tower(s.b)) {
      throw FormatError("segment '" + s.id + "' references an unknown tower");
    }
  }
  const double wind = std::hypot(g.wind.x, g.wind.y);
  for (const auto& u : g.uavs) {
    if (!g.find_base(u.base)) throw FormatError("UAV '" + u.id + "' references unknown base '" + u.base + "'");
    if (!(u.nav_speed > 0) || !(u.inspection_speed > 0)) {
      throw FormatError("UAV '" + u.id + "' needs positive speeds");
    }
    if (u.type == UavType::Vtol && !(u.turning_radius > 0)) {
      throw FormatError("VTOL '" + u.id + "' needs a positive turning radius");
    }
    if (wind >= u.nav_speed) throw FormatError("wind exceeds airspeed of '" + u.id + "'");
  }
  if (!(g.orbit_radius > 0)) throw FormatError("orbit radius must be positive");
}

namespace {

struct GridGeometry {
  const PowerGrid& g;

  double heading(Point2 a, Point2 b) const { return normalize_angle(std::atan2(b.y - a.y, b.x - a.x)); }

  // Pose when leaving (`exit`) or arriving at (`!exit`) a vertex.
  Pose2D pose(const Vertex& v, bool exit) const {
    if (v.is_base()) {
      const GridBase* b = g.find_base(v.base);
      return {b->pos.x, b->pos.y, into_wind_heading(g.wind)};
    }
    if (const Tower* t = g.find_tower(v.approach.task)) return {t->pos.x, t->pos.y, 0.0};
    const Segment* s = g.find_segment(v.approach.task);
    Point2 a = g.find_tower(s->a)->pos, b = g.find_tower(s->b)->pos;
    if (v.approach.approach == "rev") std::swap(a, b);
    const Point2 p = exit ? b : a;
    return {p.x, p.y, heading(a, b)};
  }

  LegCost execution(const Vertex& v, const UavSpec& u) const {
    if (v.is_base()) return {};
    if (g.find_tower(v.approach.task)) return inspection_cost(TowerElement{g.orbit_radius}, u);
    const Segment* s = g.find_segment(v.approach.task);
    const Point2 a = g.find_tower(s->a)->pos, b = g.find_tower(s->b)->pos;
    return inspection_cost(SegmentElement{std::hypot(b.x - a.x, b.y - a.y)}, u);
  }
};

}  // namespace

Weigher make_grid_weigher(const PowerGrid& grid) {
  return [grid](const Worker& w, const Vertex& from, const Vertex& to) {
    GridGeometry geo{grid};
    const UavSpec* u = grid.find_uav(w.id);
    if (!u) throw CostModelError("worker '" + w.id + "' is not a UAV of the grid");
    const LegCost move = transit_cost(*u, geo.pose(from, true), geo.pose(to, false), grid.wind);
    const LegCost work = geo.execution(to, *u);
    WeightMap out;
    out[std::string(kTimeCost)] = {move.time, work.time};
    out[std::string(kEnergyCost)] = {move.energy, work.energy};
    return out;
  };
}

ProblemInstance grid_to_instance(const PowerGrid& g, const GridSelection& sel) {
  if (sel.towers.empty() && sel.segments.empty()) throw std::invalid_argument("empty grid selection");
  check_grid(g);
  ProblemInstance inst;
  inst.name = "grid";
  inst.cost_types = {std::string(kTimeCost), std::string(kEnergyCost)};
  inst.travel.kind = TravelModel::Kind::Euclidean;
  inst.energy_budget = true;
  for (const auto& b : g.bases) {
    inst.locations[b.id] = b.pos;
    inst.bases.push_back({b.id, b.id});
  }
  for (const auto& t : g.towers) inst.locations[t.id] = t.pos;

  GridGeometry geo{g};
  for (const auto& tid : sel.towers) {
    if (!g.find_tower(tid)) throw std::invalid_argument("selected tower '" + tid + "' does not exist");
    Task t;
    t.id = tid;
    t.approaches.push_back({"orbit", tid, {}});
    inst.tasks.push_back(std::move(t));
  }
  for (const auto& sid : sel.segments) {
    const Segment* s = g.find_segment(sid);
    if (!s) throw std::invalid_argument("selected segment '" + sid + "' does not exist");
    Task t;
    t.id = sid;
    t.approaches.push_back({"fwd", s->a, {}});
    t.approaches.push_back({"rev", s->b, {}});
    inst.tasks.push_back(std::move(t));
  }

  for (const auto& u : g.uavs) {
    Worker w;
    w.id = u.id;
    w.base = u.base;
    w.speed = u.nav_speed;
    w.power = u.power;
    for (auto& t : inst.tasks) {
      const bool tower = g.find_tower(t.id) != nullptr;
      if (tower && u.type == UavType::Vtol) continue;
      for (auto& a : t.approaches) {
        w.compatibility.insert({t.id, a.id});
        Vertex v;
        v.kind = Vertex::Kind::Task;
        v.approach = {t.id, a.id};
        const LegCost c = geo.execution(v, u);
        a.execution[u.id] = {{std::string(kTimeCost), c.time}, {std::string(kEnergyCost), c.energy}};
      }
    }
    inst.workers.push_back(std::move(w));
  }
  return inst;
}

PowerGrid build_toomany(std::size_t identical) {
  PowerGrid g;
  g.bases.push_back({"B0", {0, 0}});
  g.towers = {{"P1", {600, 0}}, {"P2", {0, 600}}, {"P3", {-600, 0}}, {"P4", {0, -600}}};
  for (std::size_t k = 1; k <= identical; ++k) {
    g.uavs.push_back({"U" + std::to_string(k), UavType::Multirotor, "B0", 10.0, 5.0, 0.0, 1.0 / 1800.0});
  }
  g.uavs.push_back({"U" + std::to_string(identical + 1), UavType::Multirotor, "B0", 7.0, 3.5, 0.0, 1.0 / 1800.0});
  g.orbit_radius = 10.0;
  return g;
}

PowerGrid gen_grid(const GridParams& prm, std::uint64_t seed) {
  if (prm.towers == 0 && prm.segments == 0) throw std::invalid_argument("empty selection: no towers and no segments");
  if (prm.segments > 0 && prm.towers < 2) throw std::invalid_argument("segments need at least two towers");
  const std::size_t max_segments = prm.towers * (prm.towers - 1) / 2;
  if (prm.segments > max_segments) throw std::invalid_argument("too many segments for the tower count");
  if (prm.multirotors + prm.vtols == 0) throw std::invalid_argument("at least one UAV required");

  Rng rng(seed);
  PowerGrid g;
  std::vector<std::size_t> parent(prm.towers, 0);
  for (std::size_t i = 0; i < prm.towers; ++i) {
    Point2 p{0, 0};
    if (i > 0) {
      parent[i] = rng.index(i);
      const double ang = rng.uniform(0, 2 * std::numbers::pi);
      const double dist = prm.spacing * rng.uniform(0.8, 1.2);
      const Point2 q = g.towers[parent[i]].pos;
      p = {std::round(q.x + dist * std::cos(ang)), std::round(q.y + dist * std::sin(ang))};
    }
    g.towers.push_back({"P" + std::to_string(i + 1), p});
  }
  std::set<std::pair<std::size_t, std::size_t>> used;
  auto add_segment = [&](std::size_t a, std::size_t b) {
    if (a == b) return false;
    if (!used.insert({std::min(a, b), std::max(a, b)}).second) return false;
    g.segments.push_back({"S" + std::to_string(g.segments.size() + 1), g.towers[a].id, g.towers[b].id});
    return true;
  };
  for (std::size_t i = 1; i < prm.towers && g.segments.size() < prm.segments; ++i) add_segment(parent[i], i);
  while (g.segments.size() < prm.segments) add_segment(rng.index(prm.towers), rng.index(prm.towers));

  const Point2 first = g.towers.empty() ? Point2{} : g.towers.front().pos;
  g.bases.push_back({"B1", {first.x - prm.spacing / 2, first.y - prm.spacing / 2}});
  const double power = 1.0 / prm.endurance;
  for (std::size_t k = 0; k < prm.multirotors; ++k) {
    g.uavs.push_back({"M" + std::to_string(k + 1), UavType::Multirotor, "B1", 12.0, 5.0, 0.0, power});
  }
  for (std::size_t k = 0; k < prm.vtols; ++k) {
    g.uavs.push_back({"V" + std::to_string(k + 1), UavType::Vtol, "B1", 18.0, 15.0, 40.0, power});
  }
  if (prm.wind_speed > 0) {
    const double ang = rng.uniform(0, 2 * std::numbers::pi);
    g.wind = {prm.wind_speed * std::cos(ang), prm.wind_speed * std::sin(ang)};
  }
  check_grid(g);
  return g;
}

// ---- Random instances -----------------------------------------------------

ProblemInstance random_instance(const RandomSpec& spec, std::uint64_t seed) {
  if (spec.workers == 0) throw std::invalid_argument("at least one worker required");
  Rng rng(seed);
  ProblemInstance inst;
  inst.name = "random-" + std::to_string(seed);
  inst.travel.kind = TravelModel::Kind::Euclidean;

  auto point = [&] { return Point2{std::round(rng.uniform(0, spec.area)), std::round(rng.uniform(0, spec.area))}; };
  if (spec.shared_base) {
    inst.locations["Lb"] = point();
    inst.bases.push_back({"b", "Lb"});
  }
  for (std::size_t k = 0; k < spec.workers; ++k) {
    Worker w;
    w.id = "w" + std::to_string(k + 1);
    if (spec.shared_base) {
      w.base = "b";
    } else {
      w.base = "b" + std::to_string(k + 1);
      inst.locations["L" + w.base] = point();
      inst.bases.push_back({w.base, "L" + w.base});
    }
    w.speed = std::round(rng.uniform(0.5, 2.0) * 4) / 4;
    inst.workers.push_back(std::move(w));
  }

  std::vector<Id> task_ids;
  for (std::size_t i = 0; i < spec.tasks; ++i) {
    Task t;
    t.id = "t" + std::to_string(i + 1);
    const std::size_t na = 1 + rng.index(std::max<std::size_t>(1, spec.max_approaches));
    for (std::size_t a = 0; a < na; ++a) {
      Approach ap;
      ap.id = "a" + std::to_string(a + 1);
      ap.location = "L" + t.id + ap.id;
      inst.locations[*ap.location] = point();
      t.approaches.push_back(std::move(ap));
    }
    bool any = false;
    for (auto& ap : t.approaches) {
      for (auto& w : inst.workers) {
        if (!rng.chance(spec.compat_density)) continue;
        w.compatibility.insert({t.id, ap.id});
        ap.execution[w.id]["time"] = std::round(rng.uniform(0, spec.max_execution));
        any = true;
      }
    }
    if (!any) {
      auto& ap = t.approaches[rng.index(t.approaches.size())];
      auto& w = inst.workers[rng.index(inst.workers.size())];
      w.compatibility.insert({t.id, ap.id});
      ap.execution[w.id]["time"] = std::round(rng.uniform(0, spec.max_execution));
    }
    task_ids.push_back(t.id);
    inst.tasks.push_back(std::move(t));
  }
  for (const auto& [a, b] : acyclic_pairs(task_ids, spec.precedence_pairs, rng)) inst.precedence.push_back({a, b});
  for (const auto& [a, b] : acyclic_pairs(task_ids, spec.order_pairs, rng)) {
    std::optional<Id> w;
    if (rng.chance(0.5)) w = inst.workers[rng.index(inst.workers.size())].id;
    inst.order.push_back({w, a, b});
  }
  return inst;
}

// ---- JSON -----------------------------------------------------------------

namespace {

using nlohmann::json;

const char* metric_name(TravelModel::Metric m) {
  switch (m) {
    case TravelModel::Metric::Exact: return "exact";
    case TravelModel::Metric::Nint: return "nint";
    case TravelModel::Metric::Att: return "att";
  }
  return "exact";
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("coordinate must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json grid_json(const PowerGrid& g) {
  json j;
  j["orbit_radius"] = g.orbit_radius;
  j["wind"] = point_json({g.wind.x, g.wind.y});
  j["towers"] = json::array();
  for (const auto& t : g.towers) j["towers"].push_back({{"id", t.id}, {"pos", point_json(t.pos)}});
  j["segments"] = json::array();
  for (const auto& s : g.segments) j["segments"].push_back({{"id", s.id}, {"a", s.a}, {"b", s.b}});
  j["bases"] = json::array();
  for (const auto& b : g.bases) j["bases"].push_back({{"id", b.id}, {"pos", point_json(b.pos)}});
  j["uavs"] = json::array();
  for (const auto& u : g.uavs) {
    j["uavs"].push_back({{"id", u.id},
                         {"type", u.type == UavType::Vtol ? "vtol" : "multirotor"},
                         {"base", u.base},
                         {"nav_speed", u.nav_speed},
                         {"inspection_speed", u.inspection_speed},
                         {"turning_radius", u.turning_radius},
                         {"power", u.power}});
  }
  return j;
}

PowerGrid grid_from(const json& j) {
  PowerGrid g;
  g.orbit_radius = j.value("orbit_radius", 10.0);
  if (j.contains("wind")) {
    const Point2 w = point_from(j.at("wind"));
    g.wind = {w.x, w.y};
  }
  for (const auto& t : j.at("towers")) g.towers.push_back({t.at("id").get<std::string>(), point_from(t.at("pos"))});
  for (const auto& s : j.value("segments", json::array())) {
    g.segments.push_back({s.at("id").get<std::string>(), s.at("a").get<std::string>(), s.at("b").get<std::string>()});
  }
  for (const auto& b : j.at("bases")) g.bases.push_back({b.at("id").get<std::string>(), point_from(b.at("pos"))});
  for (const auto& u : j.at("uavs")) {
    UavSpec s;
    s.id = u.at("id").get<std::string>();
    const std::string type = u.at("type").get<std::string>();
    if (type != "vtol" && type != "multirotor") throw FormatError("unknown UAV type '" + type + "'");
    s.type = type == "vtol" ? UavType::Vtol : UavType::Multirotor;
    s.base = u.at("base").get<std::string>();
    s.nav_speed = u.at("nav_speed").get<double>();
    s.inspection_speed = u.at("inspection_speed").get<double>();
    s.turning_radius = u.value("turning_radius", 0.0);
    s.power = u.value("power", 0.0);
    g.uavs.push_back(std::move(s));
  }
  return g;
}

}  // namespace

InstanceDocument grid_document(const PowerGrid& g, const GridSelection& sel, std::optional<std::uint64_t> seed) {
  InstanceDocument doc;
  doc.instance = grid_to_instance(g, sel);
  doc.grid = g;
  doc.selection = sel;
  doc.seed = seed;
  return doc;
}

json to_json(const InstanceDocument& doc) {
  const ProblemInstance& in = doc.instance;
  json j;
  j["format"] = "hmwtpp-instance";
  j["version"] = 1;
  j["name"] = in.name;
  j["cost_types"] = in.cost_types;
  j["locations"] = json::object();
  for (const auto& [id, p] : in.locations) j["locations"][id] = point_json(p);
  json travel;
  travel["kind"] = in.travel.kind == TravelModel::Kind::Uniform ? "uniform" : "euclidean";
  travel["metric"] = metric_name(in.travel.metric);
  travel["uniform_time"] = in.travel.uniform_time;
  travel["same_location_time"] = in.travel.same_location_time;
  j["travel"] = travel;
  j["bases"] = json::array();
  for (const auto& b : in.bases) {
    json bj{{"id", b.id}};
    if (b.location) bj["location"] = *b.location;
    j["bases"].push_back(bj);
  }
  j["workers"] = json::array();
  for (const auto& w : in.workers) {
    json wj{{"id", w.id}, {"base", w.base}, {"speed", w.speed}, {"power", w.power}};
    wj["compatibility"] = json::array();
    for (const auto& ta : w.compatibility) wj["compatibility"].push_back({ta.task, ta.approach});
    j["workers"].push_back(wj);
  }
  j["tasks"] = json::array();
  for (const auto& t : in.tasks) {
    json tj{{"id", t.id}, {"mandatory", t.mandatory}};
    tj["approaches"] = json::array();
    for (const auto& a : t.approaches) {
      json aj{{"id", a.id}};
      if (a.location) aj["location"] = *a.location;
      aj["execution"] = a.execution;
      tj["approaches"].push_back(aj);
    }
    j["tasks"].push_back(tj);
  }
  j["order"] = json::array();
  for (const auto& o : in.order) {
    json oj{{"before", o.before}, {"after", o.after}};
    if (o.worker) oj["worker"] = *o.worker;
    j["order"].push_back(oj);
  }
  j["precedence"] = json::array();
  for (const auto& p : in.precedence) j["precedence"].push_back({{"before", p.before}, {"after", p.after}});
  j["windows"] = json::array();
  for (const auto& w : in.windows) {
    j["windows"].push_back({{"task", w.task}, {"earliest", w.earliest}, {"latest", w.latest}});
  }
  j["waiting_points"] = in.waiting_points;
  j["energy_budget"] = in.energy_budget;
  if (doc.grid) j["grid"] = grid_json(*doc.grid);
  if (doc.selection) j["selection"] = {{"towers", doc.selection->towers}, {"segments", doc.selection->segments}};
  if (doc.seed) j["seed"] = *doc.seed;
  return j;
}

InstanceDocument document_from_json(const json& j) {
  try {
    if (!j.is_object()) throw FormatError("instance document must be a JSON object");
    if (j.value("format", std::string("hmwtpp-instance")) != "hmwtpp-instance") {
      throw FormatError("not an hmwtpp instance document");
    }
    if (j.value("version", 1) != 1) throw FormatError("unsupported document version");
    InstanceDocument doc;
    ProblemInstance& in = doc.instance;
    in.name = j.value("name", std::string());
    if (j.contains("cost_types")) in.cost_types = j.at("cost_types").get<std::vector<std::string>>();
    const json locations = j.value("locations", json::object());
    for (const auto& [id, p] : locations.items()) in.locations[id] = point_from(p);
    if (j.contains("travel")) {
      const json& t = j.at("travel");
      const std::string kind = t.value("kind", std::string("uniform"));
      if (kind != "uniform" && kind != "euclidean") throw FormatError("unknown travel kind '" + kind + "'");
      in.travel.kind = kind == "uniform" ? TravelModel::Kind::Uniform : TravelModel::Kind::Euclidean;
      const std::string metric = t.value("metric", std::string("exact"));
      if (metric == "exact") in.travel.metric = TravelModel::Metric::Exact;
      else if (metric == "nint") in.travel.metric = TravelModel::Metric::Nint;
      else if (metric == "att") in.travel.metric = TravelModel::Metric::Att;
      else throw FormatError("unknown distance metric '" + metric + "'");
      in.travel.uniform_time = t.value("uniform_time", 0.0);
      in.travel.same_location_time = t.value("same_location_time", 0.0);
    }
    for (const auto& b : j.at("bases")) {
      Base base{b.at("id").get<std::string>(), std::nullopt};
      if (b.contains("location")) base.location = b.at("location").get<std::string>();
      in.bases.push_back(std::move(base));
    }
    for (const auto& wj : j.at("workers")) {
      Worker w;
      w.id = wj.at("id").get<std::string>();
      w.base = wj.at("base").get<std::string>();
      w.speed = wj.value("speed", 1.0);
      w.power = wj.value("power", 0.0);
      for (const auto& c : wj.value("compatibility", json::array())) {
        if (!c.is_array() || c.size() != 2) throw FormatError("compatibility entries are [task, approach]");
        w.compatibility.insert({c[0].get<std::string>(), c[1].get<std::string>()});
      }
      in.workers.push_back(std::move(w));
    }
    for (const auto& tj : j.at("tasks")) {
      Task t;
      t.id = tj.at("id").get<std::string>();
      t.mandatory = tj.value("mandatory", true);
      for (const auto& aj : tj.at("approaches")) {
        Approach a;
        a.id = aj.at("id").get<std::string>();
        if (aj.contains("location")) a.location = aj.at("location").get<std::string>();
        if (aj.contains("execution")) a.execution = aj.at("execution").get<std::map<Id, std::map<std::string, double>>>();
        t.approaches.push_back(std::move(a));
      }
      in.tasks.push_back(std::move(t));
    }
    for (const auto& o : j.value("order", json::array())) {
      OrderPair op;
      if (o.contains("worker")) op.worker = o.at("worker").get<std::string>();
      op.before = o.at("before").get<std::string>();
      op.after = o.at("after").get<std::string>();
      in.order.push_back(std::move(op));
    }
    for (const auto& p : j.value("precedence", json::array())) {
      in.precedence.push_back({p.at("before").get<std::string>(), p.at("after").get<std::string>()});
    }
    for (const auto& w : j.value("windows", json::array())) {
      in.windows.push_back({w.at("task").get<std::string>(), w.at("earliest").get<double>(), w.at("latest").get<double>()});
    }
    in.waiting_points = j.value("waiting_points", false);
    in.energy_budget = j.value("energy_budget", false);
    if (j.contains("grid")) doc.grid = grid_from(j.at("grid"));
    if (j.contains("selection")) {
      GridSelection s;
      s.towers = j.at("selection").value("towers", std::vector<std::string>{});
      s.segments = j.at("selection").value("segments", std::vector<std::string>{});
      doc.selection = s;
    }
    if (j.contains("seed")) doc.seed = j.at("seed").get<std::uint64_t>();
    return doc;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed instance document: ") + e.what());
  }
}

std::string serialize(const InstanceDocument& doc) { return to_json(doc).dump(2) + "\n"; }

InstanceDocument parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return document_from_json(j);
}

InstanceDocument load_document(const std::string& path) { return parse_document(read_file(path)); }

Weigher weigher_for(const InstanceDocument& doc) {
  if (doc.grid) return make_grid_weigher(*doc.grid);
  return make_table_weigher(doc.instance);
}

nlohmann::json grid_geojson(const PowerGrid& g) {
  json fc{{"type", "FeatureCollection"}, {"features", json::array()}};
  auto feature = [](json geometry, json props) {
    return json{{"type", "Feature"}, {"geometry", std::move(geometry)}, {"properties", std::move(props)}};
  };
  for (const auto& t : g.towers) {
    fc["features"].push_back(feature({{"type", "Point"}, {"coordinates", point_json(t.pos)}},
                                     {{"kind", "tower"}, {"id", t.id}}));
  }
  for (const auto& s : g.segments) {
    const Tower* a = g.find_tower(s.a);
    const Tower* b = g.find_tower(s.b);
    if (!a || !b) continue;
    fc["features"].push_back(
        feature({{"type", "LineString"}, {"coordinates", json::array({point_json(a->pos), point_json(b->pos)})}},
                {{"kind", "segment"}, {"id", s.id}}));
  }
  for (const auto& b : g.bases) {
    fc["features"].push_back(feature({{"type", "Point"}, {"coordinates", point_json(b.pos)}},
                                     {{"kind", "base"}, {"id", b.id}}));
  }
  return fc;
}

}  // namespace hmwtpp
