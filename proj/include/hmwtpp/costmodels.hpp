#pragma once

// Edge costs for aerial inspection: straight-line multirotor legs with wind,
// Dubins legs for fixed-wing VTOLs, orbit/segment inspection, and a constant
// power energy surrogate.

#include <array>
#include <stdexcept>
#include <string>

#include "hmwtpp/core_model.hpp"

namespace hmwtpp {

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians, [0, 2π)
};

double normalize_angle(double a);  // into [0, 2π)

enum class DubinsWord { LSL, RSR, LSR, RSL, RLR, LRL };
const char* to_string(DubinsWord w);

struct DubinsPath {
  DubinsWord word = DubinsWord::LSL;
  std::array<double, 3> params{};  // normalized: arc, middle, arc (radians / straight length ÷ r)
  double radius = 1.0;
  double length = 0.0;  // meters
};

/// Length of one word, or a negative value when the word does not apply.
double dubins_word_length(const Pose2D& start, const Pose2D& end, double r, DubinsWord word,
                          std::array<double, 3>* params = nullptr);
DubinsPath dubins_shortest(const Pose2D& start, const Pose2D& end, double r);
/// Point at arc length s along the path.
Pose2D dubins_sample(const Pose2D& start, const DubinsPath& path, double s);

struct Wind {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Wind&) const = default;
};

enum class UavType { Multirotor, Vtol };

struct UavSpec {
  Id id;
  UavType type = UavType::Multirotor;
  Id base;
  double nav_speed = 10.0;         // m/s airspeed in transit
  double inspection_speed = 5.0;   // m/s
  double turning_radius = 0.0;     // m, VTOL only
  double power = 0.0;              // fraction of budget per second

  bool operator==(const UavSpec&) const = default;
};

class CostModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LegCost {
  double time = 0.0;
  double energy = 0.0;
};

/// Transit between two poses. Multirotors fly straight at ground speed
/// airspeed + wind·û; VTOLs follow the Dubins path at airspeed.
LegCost transit_cost(const UavSpec& uav, const Pose2D& from, const Pose2D& to, const Wind& wind);

struct TowerElement {
  double orbit_radius = 10.0;
};
struct SegmentElement {
  double length = 0.0;
};

LegCost inspection_cost(const TowerElement& t, const UavSpec& uav);
LegCost inspection_cost(const SegmentElement& s, const UavSpec& uav);

/// Heading that points into the wind (takeoff / landing); 0 in calm air.
double into_wind_heading(const Wind& wind);

}  // namespace hmwtpp
