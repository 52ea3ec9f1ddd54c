#pragma once

#include <optional>
#include <vector>

#include "pnscale/boundary.hpp"

namespace pnscale {

// A finite tuple of n x n complex matrices, not all zero. Tuples whose
// common kernels (of the A_k, or of the A_k adjoints) are nontrivial are
// representable, and the certifier converts such kernels into unbounded
// witnesses; the block minimizers however need the kernel on their side to
// be trivial, and reduce_common_kernel cuts a tuple down to that form.
class OperatorTuple {
 public:
  OperatorTuple(int n, std::vector<CMat> mats);

  int n() const { return n_; }
  int count() const { return static_cast<int>(mats_.size()); }
  const std::vector<CMat>& mats() const { return mats_; }

 private:
  int n_;
  std::vector<CMat> mats_;
};

// Conjugates by unitaries that align both common kernels with the trailing
// coordinates and truncates the tuple to the leading square block, repeating
// until at most one common kernel is left. The reduced tuple is
// left† A_k right with isometries left, right (ambient x reduced columns);
// nothing of the A_k is lost because the cut directions act by zero.
struct KernelReduction {
  std::vector<CMat> mats;
  CMat left;
  CMat right;
  int reduced_n = 0;
};
KernelReduction reduce_common_kernel(int n, const std::vector<CMat>& mats,
                                     double tol = kRankTol);

// Marginal prescription for two-sided scaling: arranged nonnegative weights
// on a flag for each side, with equal total mass.
class MarginalTarget {
 public:
  MarginalTarget(BoundaryPoint p, BoundaryPoint q);
  const BoundaryPoint& p() const { return p_; }
  const BoundaryPoint& q() const { return q_; }
  double mass() const { return mass_; }

 private:
  BoundaryPoint p_;
  BoundaryPoint q_;
  double mass_;
};

// n log sum_k tr(x A_k y A_k†). Jointly geodesically convex in (x, y).
double kempf_ness(const OperatorTuple& a, const PDPoint& x, const PDPoint& y);

// Euclidean differential of kempf_ness: the derivative along (H, G) is
// Re tr(dx H) + Re tr(dy G), with dx = C sum_k A_k y A_k†,
// dy = C sum_k A_k† x A_k and C = n / sum_k tr(x A_k y A_k†).
struct Differential {
  CMat dx;
  CMat dy;
};
Differential differential(const OperatorTuple& a, const PDPoint& x,
                          const PDPoint& y);

// The objective the scaler drives down: mass-weighted potential plus the
// Busemann functions of both target directions,
//   mass * log sum_k tr(x A_k y A_k†) + b_p(x) + b_q(y).
// With the standard normalization mass = n this is kempf_ness + b_p + b_q.
double objective(const OperatorTuple& a, const MarginalTarget& target,
                 const PDPoint& x, const PDPoint& y);

// Norm of the Riemannian gradient of the objective at (x, y), evaluated in
// triangular coordinates: with u† x^(1/2) = b k and v† y^(1/2) = c k',
//   sqrt( |C sum T_k T_k† - diag l|_F^2 + |C sum T_k† T_k - diag m|_F^2 ),
// where T_k = b† u† A_k v c and C = mass / sum_k |T_k|_F^2. Agrees with the
// tangent norm of grad_from_diff + busemann_grad assembled on both factors.
double residual(const OperatorTuple& a, const PDPoint& x, const PDPoint& y,
                const MarginalTarget& target);

// Exact block minimizers of the objective: optimal_y returns y = h h† where
// h = v c makes the y-side marginal equal diag(m) exactly (mirrored for
// optimal_x). Throws DegenerateMarginal on zero weights and
// NotPositiveDefinite when the block operator is singular.
PDPoint optimal_x(const OperatorTuple& a, const PDPoint& y,
                  const BoundaryPoint& p);
PDPoint optimal_y(const OperatorTuple& a, const PDPoint& x,
                  const BoundaryPoint& q);

struct ScaleResult {
  PDPoint x;
  PDPoint y;
  CMat g;  // scaling frames: x = g g†, y = h h† up to the trace gauge
  CMat h;
  double residual = 0.0;
  int sweeps = 0;
  bool converged = false;
  // Objective value per recorded sweep; strictly alternating minimization,
  // so nonincreasing. Subsampled when the budget is large.
  std::vector<double> objective_trace;
};

// Alternates the exact block minimizers from (I, I), rebalancing the trace
// gauge after every sweep, until the gradient residual reaches eps or the
// sweep budget runs out (converged = false, best iterate returned). Requires
// strictly positive weights on both sides. When a block operator comes out
// singular no block minimizer exists; the loop stops there and reports the
// best iterate seen.
ScaleResult scale_alternating(const OperatorTuple& a,
                              const MarginalTarget& target, double eps,
                              int budget);

// Coefficients of the potential restricted to the flat spanned by frames
// (g, h): a_ij = sum_k |(g† A_k h)_ij|^2, so that
// kempf_ness(g e^diag(s) g†, h e^diag(t) h†) = n log sum_ij a_ij e^(s_i+t_j).
RMat flat_coefficients(const OperatorTuple& a, const CMat& g, const CMat& h);

// Recession value of kempf_ness along the product direction (p, q):
// n * max{ p_i + q_j over the support of flat_coefficients(a, u_p, u_q) },
// entries counted as support above support_tol in magnitude.
double recession_op(const OperatorTuple& a, const BoundaryPoint& p,
                    const BoundaryPoint& q, double support_tol = 1e-10);

// Largest Y with u† A_k v = 0 for all u in X, v in Y, all k (and the mirror
// image fixing Y).
SubspaceBasis perp_right(const OperatorTuple& a, const SubspaceBasis& x);
SubspaceBasis perp_left(const OperatorTuple& a, const SubspaceBasis& y);

// Slack of the boundedness inequality at an annihilating pair (X, Y):
//   mass - sum_i (l_i - l_{i+1}) dim(U_i cap X)
//        - sum_j (m_j - m_{j+1}) dim(V_j cap Y).
// Nonnegative for every annihilating pair iff the target is reachable in
// the approximate sense. Throws NotInSA when (X, Y) fails
// max_k |X† A_k Y| <= sa_tol.
double cut_slack(const OperatorTuple& a, const MarginalTarget& target,
                 const SubspaceBasis& x, const SubspaceBasis& y,
                 double sa_tol = 1e-8);

struct ScalingWitness {
  SubspaceBasis x;
  SubspaceBasis y;
  double violation = 0.0;  // -cut_slack > 0
};

enum class Verdict { BoundedEvidence, UnboundedWitness, Indeterminate };

struct Certificate {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<ScalingWitness> witness;
  double residual = 0.0;    // best gradient residual reached by the scaler
  double best_slack = 0.0;  // smallest cut slack over all candidates tried
  int sweeps = 0;
  std::vector<double> objective_trace;
};

// Two-sided search: first an exhaustive pass over coordinate subspaces of
// the two target frames (each paired with its annihilator), then, if the
// scaler stalls above eps, spectral candidates read off the stalled
// marginal mismatch. A witness is only emitted when cut_slack certifies
// violation <= -delta, so every emitted witness is sound regardless of how
// the candidate was found; the search itself is heuristic and may return
// Indeterminate.
Certificate certify(const OperatorTuple& a, const MarginalTarget& target,
                    double eps, double delta, int budget);

// Restriction of a degenerate target (trailing zero weights on both sides)
// to the leading flag block where weights are positive. Requires the same
// number of positive weights on both sides; the reduced tuple is
// left† A_k right on the leading columns of the target frames.
struct PositiveBlockReduction {
  OperatorTuple tuple;
  MarginalTarget target;
  CMat left;
  CMat right;
};
PositiveBlockReduction restrict_to_positive_block(const OperatorTuple& a,
                                                  const MarginalTarget& target,
                                                  double tol = 1e-12);

}  // namespace pnscale
