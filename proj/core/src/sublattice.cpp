#include "pnscale/sublattice.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <utility>

#include "pnscale/errors.hpp"

namespace pnscale {

SubspaceFamily::SubspaceFamily(int ambient) : ambient_(ambient) {
  if (ambient <= 0) {
    throw DimensionMismatch("SubspaceFamily: ambient must be positive");
  }
  add(SubspaceBasis::zero(ambient));
  add(SubspaceBasis::full(ambient));
}

int SubspaceFamily::find(const SubspaceBasis& x) const {
  if (x.ambient != ambient_) {
    throw DimensionMismatch("SubspaceFamily: ambient mismatch");
  }
  CMat p = x.projector();
  for (int i = 0; i < size(); ++i) {
    if (members_[i].dim() == x.dim() &&
        (projectors_[i] - p).norm() <= kSubspaceDedupTol) {
      return i;
    }
  }
  return -1;
}

int SubspaceFamily::add(SubspaceBasis x) {
  int idx = find(x);
  if (idx >= 0) return idx;
  projectors_.push_back(x.projector());
  members_.push_back(std::move(x));
  return size() - 1;
}

bool SubspaceFamily::closed_under_meet_join() const {
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      MeetJoin mj = subspace_meet_join(members_[i], members_[j]);
      if (find(mj.meet) < 0 || find(mj.join) < 0) return false;
    }
  }
  return true;
}

void SubspaceFamily::close(int max_members) {
  // Round-based saturation: each round pairs everything present at the
  // round's start, so newly added members get paired in the next round.
  int frontier = 0;
  while (frontier < size()) {
    int end = size();
    for (int i = 0; i < end; ++i) {
      for (int j = std::max(i + 1, frontier); j < end; ++j) {
        MeetJoin mj = subspace_meet_join(members_[i], members_[j]);
        add(std::move(mj.meet));
        add(std::move(mj.join));
        if (size() > max_members) {
          throw InvalidInstance(
              "SubspaceFamily::close: closure exceeded the member cap");
        }
      }
    }
    frontier = end;
  }
}

LatticeFunction::LatticeFunction(int ambient, Oracle oracle, bool concurrent)
    : ambient_(ambient), oracle_(std::move(oracle)), concurrent_(concurrent) {
  if (!oracle_) throw InvalidInstance("LatticeFunction: empty oracle");
  offset_ = oracle_(SubspaceBasis::zero(ambient_));
}

double LatticeFunction::operator()(const SubspaceBasis& x) const {
  if (x.ambient != ambient_) {
    throw DimensionMismatch("LatticeFunction: ambient mismatch");
  }
  return oracle_(x) - offset_;
}

SubmodularityReport submodularity_check(const LatticeFunction& rho,
                                        const SubspaceFamily& family,
                                        double tol) {
  if (rho.ambient() != family.ambient()) {
    throw DimensionMismatch("submodularity_check: ambient mismatch");
  }
  const int m = family.size();
  std::vector<double> value(m);
  if (rho.concurrent()) {
    std::vector<std::future<double>> jobs;
    jobs.reserve(m);
    for (int i = 0; i < m; ++i) {
      jobs.push_back(std::async(std::launch::async,
                                [&rho, &family, i] { return rho(family[i]); }));
    }
    for (int i = 0; i < m; ++i) value[i] = jobs[i].get();
  } else {
    for (int i = 0; i < m; ++i) value[i] = rho(family[i]);
  }

  SubmodularityReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      MeetJoin mj = subspace_meet_join(family[i], family[j]);
      const double slack =
          value[i] + value[j] - rho(mj.meet) - rho(mj.join);
      report.min_slack = std::min(report.min_slack, slack);
      if (slack < -tol) {
        report.ok = false;
        report.violations.push_back(
            {i, j, std::move(mj.meet), std::move(mj.join), -slack});
      }
    }
  }
  if (m < 2) report.min_slack = 0.0;
  return report;
}

double lovasz(const LatticeFunction& rho, const BoundaryPoint& p) {
  if (rho.ambient() != p.n()) {
    throw DimensionMismatch("lovasz: ambient mismatch");
  }
  const int n = p.n();
  double out = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double gap = p.lambda()(i - 1) - (i < n ? p.lambda()(i) : 0.0);
    if (gap == 0.0) continue;
    out += gap * rho(p.flag_subspace(i));
  }
  return out;
}

BaseMembership base_membership(const LatticeFunction& rho,
                               const BoundaryPoint& p,
                               const SubspaceFamily& family, double tol) {
  if (rho.ambient() != p.n() || family.ambient() != p.n()) {
    throw DimensionMismatch("base_membership: ambient mismatch");
  }
  BaseMembership out;
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < family.size(); ++i) {
    const SubspaceBasis& x = family[i];
    const double demand =
        x.dim() == 0 ? 0.0 : pairing(p, BoundaryPoint::from_subspace(x));
    const double slack = rho(x) - demand;
    if (slack < out.worst_slack) {
      out.worst_slack = slack;
      out.worst_index = i;
    }
    if (x.dim() == p.n()) out.top_gap = -slack;
  }
  out.member = out.worst_slack >= -tol && std::abs(out.top_gap) <= tol;
  return out;
}

}  // namespace pnscale
