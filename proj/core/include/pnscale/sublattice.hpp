#pragma once

#include <functional>
#include <vector>

#include "pnscale/boundary.hpp"
#include "pnscale/numerics.hpp"

namespace pnscale {

// Two numeric subspaces count as equal when their orthogonal projectors are
// this close in Frobenius norm (distinct dimensions are at least 1 apart).
inline constexpr double kSubspaceDedupTol = 1e-8;

// Finite working family of subspaces of C^n. The zero subspace and the full
// space are always present; add() drops duplicates by projector distance.
// The full lattice is infinite, so a family is either meet/join closed
// (saturate with close()) or an explicit sample.
class SubspaceFamily {
 public:
  explicit SubspaceFamily(int ambient);

  int ambient() const { return ambient_; }
  int size() const { return static_cast<int>(members_.size()); }
  const SubspaceBasis& operator[](int i) const { return members_[i]; }
  const std::vector<SubspaceBasis>& members() const { return members_; }

  // Index of an equal member, or -1.
  int find(const SubspaceBasis& x) const;
  // Adds x unless an equal member exists; returns the member's index.
  int add(SubspaceBasis x);

  bool closed_under_meet_join() const;
  // Saturates under meet and join. Throws InvalidInstance if the closure
  // exceeds max_members (generic subspaces generate infinite lattices).
  void close(int max_members = 1024);

 private:
  int ambient_;
  std::vector<SubspaceBasis> members_;
  std::vector<CMat> projectors_;  // cached, parallel to members_
};

// Real-valued function on subspaces, normalized so the zero subspace maps
// to 0 (the raw oracle's value there is subtracted from every evaluation).
// concurrent declares the oracle safe to call from several threads.
class LatticeFunction {
 public:
  using Oracle = std::function<double(const SubspaceBasis&)>;

  LatticeFunction(int ambient, Oracle oracle, bool concurrent = false);

  int ambient() const { return ambient_; }
  bool concurrent() const { return concurrent_; }
  double operator()(const SubspaceBasis& x) const;

 private:
  int ambient_;
  Oracle oracle_;
  bool concurrent_;
  double offset_;
};

struct SubmodularityViolation {
  int i = 0;  // indices into the family
  int j = 0;
  SubspaceBasis meet;
  SubspaceBasis join;
  double deficit = 0.0;  // rho(meet) + rho(join) - rho(X_i) - rho(X_j) > 0
};

struct SubmodularityReport {
  bool ok = true;
  double min_slack = 0.0;  // most binding pair, negative on violation
  std::vector<SubmodularityViolation> violations;
};

// Checks rho(X) + rho(Y) >= rho(X meet Y) + rho(X join Y) over all pairs of
// family members, with meets and joins taken exactly (subspace_meet_join).
// Slacks below -tol are reported as violations. Member values are evaluated
// up front, concurrently when the oracle allows it; the pair scan itself is
// sequential so reports are deterministic in the family order.
SubmodularityReport submodularity_check(const LatticeFunction& rho,
                                        const SubspaceFamily& family,
                                        double tol = 1e-9);

// Extension of rho to boundary points through the flag,
//   sum_i (l_i - l_{i+1}) rho(U_i),   l_{n+1} = 0,
// with U_i the leading i-dimensional flag subspace. Positively homogeneous
// in the weights and equal to rho(X) on single-subspace points 1*X.
double lovasz(const LatticeFunction& rho, const BoundaryPoint& p);

struct BaseMembership {
  bool member = false;
  int worst_index = -1;     // family member with the smallest slack
  double worst_slack = 0.0; // min over X of rho(X) - pairing(p, 1*X)
  double top_gap = 0.0;     // pairing(p, 1*C^n) - rho(C^n), must be ~0
};

// Membership of p in the base polyhedron cut out by the family:
//   pairing(p, 1*X) <= rho(X) for every member X,
// with equality on the full space. Member when every slack is >= -tol and
// the top gap vanishes to tol. The family must contain C^n (it always does
// by construction).
BaseMembership base_membership(const LatticeFunction& rho,
                               const BoundaryPoint& p,
                               const SubspaceFamily& family,
                               double tol = 1e-9);

}  // namespace pnscale
