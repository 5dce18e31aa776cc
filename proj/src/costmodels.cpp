#include "hmwtpp/costmodels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hmwtpp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  // Values a hair below 2π are a full turn of rounding noise, not a loop.
  if (kTwoPi - r < 1e-10) r = 0.0;
  return r;
}
}  // namespace

double normalize_angle(double a) { return mod2pi(a); }

const char* to_string(DubinsWord w) {
  switch (w) {
    case DubinsWord::LSL: return "LSL";
    case DubinsWord::RSR: return "RSR";
    case DubinsWord::LSR: return "LSR";
    case DubinsWord::RSL: return "RSL";
    case DubinsWord::RLR: return "RLR";
    case DubinsWord::LRL: return "LRL";
  }
  return "?";
}

double dubins_word_length(const Pose2D& start, const Pose2D& end, double r, DubinsWord word,
                          std::array<double, 3>* params) {
  const double dx = end.x - start.x, dy = end.y - start.y;
  const double d = std::hypot(dx, dy) / r;
  const double theta = d > 0 ? mod2pi(std::atan2(dy, dx)) : 0.0;
  const double alpha = mod2pi(start.heading - theta);
  const double beta = mod2pi(end.heading - theta);
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double cab = std::cos(alpha - beta);
  const double d2 = d * d;

  double t = 0, p = 0, q = 0;
  switch (word) {
    case DubinsWord::LSL: {
      const double p2 = 2 + d2 - 2 * cab + 2 * d * (sa - sb);
      if (p2 < 0) return -1;
      const double tmp = std::atan2(cb - ca, d + sa - sb);
      t = mod2pi(tmp - alpha);
      p = std::sqrt(p2);
      q = mod2pi(beta - tmp);
      break;
    }
    case DubinsWord::RSR: {
      const double p2 = 2 + d2 - 2 * cab + 2 * d * (sb - sa);
      if (p2 < 0) return -1;
      const double tmp = std::atan2(ca - cb, d - sa + sb);
      t = mod2pi(alpha - tmp);
      p = std::sqrt(p2);
      q = mod2pi(tmp - beta);
      break;
    }
    case DubinsWord::LSR: {
      const double p2 = -2 + d2 + 2 * cab + 2 * d * (sa + sb);
      if (p2 < 0) return -1;
      p = std::sqrt(p2);
      const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
      t = mod2pi(tmp - alpha);
      q = mod2pi(tmp - beta);
      break;
    }
    case DubinsWord::RSL: {
      const double p2 = -2 + d2 + 2 * cab - 2 * d * (sa + sb);
      if (p2 < 0) return -1;
      p = std::sqrt(p2);
      const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
      t = mod2pi(alpha - tmp);
      q = mod2pi(beta - tmp);
      break;
    }
    case DubinsWord::RLR: {
      const double c = (6 - d2 + 2 * cab + 2 * d * (sa - sb)) / 8;
      if (std::abs(c) > 1) return -1;
      const double phi = std::atan2(ca - cb, d - sa + sb);
      // both middle arcs close the path; keep the shorter
      double best = std::numeric_limits<double>::infinity();
      for (double pm : {mod2pi(kTwoPi - std::acos(c)), std::acos(c)}) {
        const double tm = mod2pi(alpha - phi + pm / 2);
        const double qm = mod2pi(alpha - beta - tm + pm);
        if (tm + pm + qm < best) best = tm + pm + qm, t = tm, p = pm, q = qm;
      }
      break;
    }
    case DubinsWord::LRL: {
      const double c = (6 - d2 + 2 * cab + 2 * d * (sb - sa)) / 8;
      if (std::abs(c) > 1) return -1;
      const double phi = std::atan2(ca - cb, d + sa - sb);
      double best = std::numeric_limits<double>::infinity();
      for (double pm : {mod2pi(kTwoPi - std::acos(c)), std::acos(c)}) {
        const double tm = mod2pi(-alpha - phi + pm / 2);
        const double qm = mod2pi(beta - alpha - tm + pm);
        if (tm + pm + qm < best) best = tm + pm + qm, t = tm, p = pm, q = qm;
      }
      break;
    }
  }
  if (params) *params = {t, p, q};
  return (t + p + q) * r;
}

DubinsPath dubins_shortest(const Pose2D& start, const Pose2D& end, double r) {
  if (!(r > 0)) throw CostModelError("turning radius must be positive");
  DubinsPath best;
  best.radius = r;
  const bool same = start.x == end.x && start.y == end.y &&
                    mod2pi(start.heading) == mod2pi(end.heading);
  if (same) return best;
  best.length = -1;
  for (auto w : {DubinsWord::LSL, DubinsWord::RSR, DubinsWord::LSR, DubinsWord::RSL,
                 DubinsWord::RLR, DubinsWord::LRL}) {
    std::array<double, 3> prm{};
    const double len = dubins_word_length(start, end, r, w, &prm);
    if (len < 0) continue;
    if (best.length < 0 || len < best.length - 1e-12 * std::max(1.0, best.length)) {
      best.word = w;
      best.params = prm;
      best.length = len;
    }
  }
  return best;
}

Pose2D dubins_sample(const Pose2D& start, const DubinsPath& path, double s) {
  static constexpr char kTurns[6][3] = {{'L', 'S', 'L'}, {'R', 'S', 'R'}, {'L', 'S', 'R'},
                                        {'R', 'S', 'L'}, {'R', 'L', 'R'}, {'L', 'R', 'L'}};
  const auto& turns = kTurns[static_cast<int>(path.word)];
  const double r = path.radius;
  double u = s / r;  // normalized arc length remaining
  Pose2D p = start;
  for (int i = 0; i < 3 && u > 0; ++i) {
    const double seg = std::min(u, path.params[i]);
    const double h = p.heading;
    switch (turns[i]) {
      case 'S':
        p.x += seg * r * std::cos(h);
        p.y += seg * r * std::sin(h);
        break;
      case 'L':
        p.x += r * (std::sin(h + seg) - std::sin(h));
        p.y += r * (-std::cos(h + seg) + std::cos(h));
        p.heading = h + seg;
        break;
      case 'R':
        p.x += r * (-std::sin(h - seg) + std::sin(h));
        p.y += r * (std::cos(h - seg) - std::cos(h));
        p.heading = h - seg;
        break;
    }
    u -= seg;
  }
  p.heading = mod2pi(p.heading);
  return p;
}

double into_wind_heading(const Wind& wind) {
  if (wind.x == 0.0 && wind.y == 0.0) return 0.0;
  return mod2pi(std::atan2(-wind.y, -wind.x));
}

LegCost transit_cost(const UavSpec& uav, const Pose2D& from, const Pose2D& to, const Wind& wind) {
  if (!(uav.nav_speed > 0)) throw CostModelError("airspeed must be positive for '" + uav.id + "'");
  if (std::hypot(wind.x, wind.y) >= uav.nav_speed) {
    throw CostModelError("wind exceeds airspeed of '" + uav.id + "'");
  }
  LegCost c;
  if (uav.type == UavType::Multirotor) {
    const double dx = to.x - from.x, dy = to.y - from.y;
    const double dist = std::hypot(dx, dy);
    if (dist > 0) {
      const double ground = uav.nav_speed + (wind.x * dx + wind.y * dy) / dist;
      c.time = dist / ground;
    }
  } else {
    if (!(uav.turning_radius > 0)) {
      throw CostModelError("VTOL '" + uav.id + "' needs a positive turning radius");
    }
    c.time = dubins_shortest(from, to, uav.turning_radius).length / uav.nav_speed;
  }
  c.energy = uav.power * c.time;
  return c;
}

LegCost inspection_cost(const TowerElement& t, const UavSpec& uav) {
  if (!(t.orbit_radius > 0)) throw CostModelError("orbit radius must be positive");
  if (!(uav.inspection_speed > 0)) throw CostModelError("inspection speed must be positive");
  LegCost c;
  c.time = 2.0 * std::numbers::pi * t.orbit_radius / uav.inspection_speed;
  c.energy = uav.power * c.time;
  return c;
}

LegCost inspection_cost(const SegmentElement& s, const UavSpec& uav) {
  if (!(uav.inspection_speed > 0)) throw CostModelError("inspection speed must be positive");
  LegCost c;
  c.time = s.length / uav.inspection_speed;
  c.energy = uav.power * c.time;
  return c;
}

}  // namespace hmwtpp
