#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "pnscale/boundary.hpp"

namespace pnscale {

// Probe for estimating the asymptotic slope of a convex objective along a
// geodesic ray. The default grid doubles from 1 to 1024.
struct RayProbe {
  std::vector<double> t_grid;  // strictly increasing, positive
  double cap = 1e6;            // last quotient above this reports "infinite"
  bool concurrent = false;     // evaluate grid points through std::async

  static RayProbe geometric(int doublings = 10);
};

struct RayEstimate {
  std::vector<double> quotients;  // (f(c(t)) - f(c(0))) / t per grid point
  double estimate = 0.0;          // secant slope over the last grid gap
  bool infinite = false;
  // Largest decrease between consecutive quotients. Convexity along the ray
  // makes the quotients nondecreasing, so anything above rounding size here
  // means the oracle is not geodesically convex (or the ray is wrong).
  double monotone_violation = 0.0;
};

// Difference quotients of t -> f(c(t)) with f evaluated at 0 and at every
// grid point. The from-origin quotients increase monotonically for convex
// objectives and approach the recession value from below at rate O(1/t); the
// reported estimate is the last-gap secant slope, which converges
// exponentially fast when the asymptotic slope is attained with a spectral
// gap (log-sum-exp type objectives). Oracle exceptions propagate; non-finite
// oracle values become EvaluationFailure.
RayEstimate ray_quotients(const std::function<double(double)>& f_along_ray,
                          const RayProbe& probe = RayProbe::geometric());

// Ray realized on the manifold: c(t) = g exp(t diag l) g† with
// g = ray_frame(dir, base). Only safe while t * max|l| stays well inside the
// floating point exponent range; for larger t evaluate in the log domain and
// use the scalar overload.
RayEstimate ray_quotients(const std::function<double(const PDPoint&)>& f,
                          const BoundaryPoint& dir, const PDPoint& base,
                          const RayProbe& probe = RayProbe::geometric());

// Product-space ray for objectives of two positive definite arguments.
RayEstimate ray_quotients(
    const std::function<double(const PDPoint&, const PDPoint&)>& f,
    const BoundaryPair& dir, const PDPoint& base_x, const PDPoint& base_y,
    const RayProbe& probe = RayProbe::geometric());

// Recession value of x -> log sum_i a_i exp(<w_i, x>) in direction p:
// max_i <w_i, p>. Terms are (w_i, a_i) with a_i > 0.
double logsumexp_recession(const std::vector<std::pair<RVec, double>>& terms,
                           const RVec& p);

// Stable evaluation of t -> prefactor * log sum_i a_i exp(t s_i) for terms
// (s_i, a_i), a_i > 0. Shifts by the dominant exponent, so it stays finite
// arbitrarily far along the ray where the matrix form of the same objective
// would overflow.
double logsumexp_along(const std::vector<std::pair<double, double>>& terms,
                       double prefactor, double t);

inline constexpr double kMembershipTol = 1e-9;

template <typename Direction>
struct Halfspace {
  Direction direction;
  double bound;
};

// Finitely many halfspaces { q : <direction, q> <= bound } cutting out an
// outer approximation of a recession-bounded set.
template <typename Direction>
struct HalfspaceFamily {
  std::vector<Halfspace<Direction>> members;

  template <typename Oracle>
  static HalfspaceFamily from_oracle(const std::vector<Direction>& directions,
                                     Oracle&& h) {
    HalfspaceFamily fam;
    fam.members.reserve(directions.size());
    for (const auto& d : directions) {
      fam.members.push_back({d, h(d)});
    }
    return fam;
  }
};

struct MembershipReport {
  bool member = true;
  int worst_index = -1;  // index of the halfspace with the smallest slack
  double worst_slack = std::numeric_limits<double>::infinity();
};

// p is a member when pairing(direction, p) <= bound + 1e-9 for every family
// member. Works for boundary points and boundary pairs alike through the
// pairing overloads.
template <typename Direction, typename Point>
MembershipReport halfspace_membership(const HalfspaceFamily<Direction>& family,
                                      const Point& p) {
  if (family.members.empty()) {
    throw EmptyFamily("halfspace_membership: no halfspaces");
  }
  MembershipReport rep;
  for (int i = 0; i < static_cast<int>(family.members.size()); ++i) {
    const double slack =
        family.members[i].bound - pairing(family.members[i].direction, p);
    if (slack < rep.worst_slack) {
      rep.worst_slack = slack;
      rep.worst_index = i;
    }
  }
  rep.member = rep.worst_slack >= -kMembershipTol;
  return rep;
}

}  // namespace pnscale
