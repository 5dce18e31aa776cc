#pragma once

// Brute-force Dubins lengths: scan the first arc angle densely, find where the
// remaining geometry closes (sign changes, then bisection), and keep only
// candidates whose forward simulation lands on the target pose.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "hmwtpp/costmodels.hpp"

namespace oracle {

using hmwtpp::Pose2D;

constexpr double kTwoPi = 2 * std::numbers::pi;

inline double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

struct P { double x, y; };

// Centre of the turning circle on side `left` for a pose.
inline P centre(const Pose2D& s, double r, bool left) {
  const double sg = left ? 1.0 : -1.0;
  return {s.x - sg * r * std::sin(s.heading), s.y + sg * r * std::cos(s.heading)};
}

// Point of a circle where the tangent heading (in the turn direction) is h.
inline P point_at(P c, double r, bool left, double h) {
  const double sg = left ? 1.0 : -1.0;
  return {c.x + sg * r * std::sin(h), c.y - sg * r * std::cos(h)};
}

inline double heading_at(P c, P p, bool left) {
  return left ? std::atan2(p.x - c.x, -(p.y - c.y)) : std::atan2(-(p.x - c.x), p.y - c.y);
}

inline Pose2D arc(const Pose2D& s, double r, bool left, double a) {
  const P c = centre(s, r, left);
  const double h = s.heading + (left ? a : -a);
  const P q = point_at(c, r, left, h);
  return {q.x, q.y, h};
}

inline Pose2D straight(const Pose2D& s, double d) {
  return {s.x + d * std::cos(s.heading), s.y + d * std::sin(s.heading), s.heading};
}

// Word as three segment kinds: 'L', 'R', 'S'.
inline Pose2D simulate(const Pose2D& s, double r, const char* w, double a, double b, double c) {
  Pose2D p = s;
  const double par[3] = {a, b, c};
  for (int k = 0; k < 3; ++k) p = w[k] == 'S' ? straight(p, par[k]) : arc(p, r, w[k] == 'L', par[k]);
  return p;
}

inline bool lands(const Pose2D& got, const Pose2D& want, double tol) {
  const double dh = std::abs(std::remainder(got.heading - want.heading, kTwoPi));
  return std::hypot(got.x - want.x, got.y - want.y) <= tol && dh <= tol;
}

struct Candidate {
  double a, b, c, length;
};

// For a first-arc angle t, the remaining parameters and a closure residual.
struct Closure {
  double residual;
  double b, c;
};

inline Closure close_csc(const Pose2D& s, const Pose2D& e, double r, const char* w, double t) {
  const bool l1 = w[0] == 'L', l3 = w[2] == 'L';
  const Pose2D p1 = arc(s, r, l1, t);
  const P c3 = centre(e, r, l3);
  const P p2 = point_at(c3, r, l3, p1.heading);
  const double dx = p2.x - p1.x, dy = p2.y - p1.y;
  const double ch = std::cos(p1.heading), sh = std::sin(p1.heading);
  const double q = l3 ? wrap(e.heading - p1.heading) : wrap(p1.heading - e.heading);
  return {ch * dy - sh * dx, ch * dx + sh * dy, q};
}

inline Closure close_ccc(const Pose2D& s, const Pose2D& e, double r, const char* w, double t) {
  const bool l1 = w[0] == 'L', l2 = w[1] == 'L', l3 = w[2] == 'L';
  const Pose2D p1 = arc(s, r, l1, t);
  const P c2 = centre(p1, r, l2);
  const P c3 = centre(e, r, l3);
  const double dist = std::hypot(c3.x - c2.x, c3.y - c2.y);
  const P mid{(c2.x + c3.x) / 2, (c2.y + c3.y) / 2};
  const double ht = heading_at(c2, mid, l2);
  const double b = l2 ? wrap(ht - p1.heading) : wrap(p1.heading - ht);
  const double c = l3 ? wrap(e.heading - ht) : wrap(ht - e.heading);
  return {dist - 2 * r, b, c};
}

inline std::vector<Candidate> word_candidates(const Pose2D& s, const Pose2D& e, double r, const char* w,
                                              int samples = 4000) {
  const bool csc = w[1] == 'S';
  auto close = [&](double t) { return csc ? close_csc(s, e, r, w, t) : close_ccc(s, e, r, w, t); };
  std::vector<Candidate> out;
  auto accept = [&](double t) {
    const Closure cl = close(t);
    if (csc && cl.b < -1e-9) return;
    const double b = csc ? std::max(cl.b, 0.0) : cl.b;
    if (!lands(simulate(s, r, w, t, b, cl.c), e, 1e-6 * (1 + r))) return;
    const double len = csc ? r * (t + cl.c) + b : r * (t + b + cl.c);
    out.push_back({t, b, cl.c, len});
  };
  double t0 = 0.0, f0 = close(0.0).residual;
  if (f0 == 0.0) accept(0.0);
  for (int k = 1; k <= samples; ++k) {
    const double t1 = kTwoPi * k / samples;
    const double f1 = close(t1).residual;
    if (f1 == 0.0) {
      accept(t1);
    } else if ((f0 < 0) != (f1 < 0) && f0 != 0.0) {
      double lo = t0, hi = t1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double m = 0.5 * (lo + hi);
        const double fm = close(m).residual;
        if ((fm < 0) == (flo < 0)) {
          lo = m;
          flo = fm;
        } else {
          hi = m;
        }
      }
      accept(0.5 * (lo + hi));
    }
    t0 = t1;
    f0 = f1;
  }
  return out;
}

inline const char* const kWords[6] = {"LSL", "RSR", "LSR", "RSL", "RLR", "LRL"};

/// Shortest length over all six words; infinity if nothing closes.
inline double shortest(const Pose2D& s, const Pose2D& e, double r) {
  double best = std::numeric_limits<double>::infinity();
  for (const char* w : kWords)
    for (const auto& c : word_candidates(s, e, r, w)) best = std::min(best, c.length);
  return best;
}

}  // namespace oracle
