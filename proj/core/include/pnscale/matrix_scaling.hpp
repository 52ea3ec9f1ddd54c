#pragma once

#include <optional>
#include <vector>

#include "pnscale/numerics.hpp"

namespace pnscale {

// A nonnegative square matrix with prescribed positive marginals. The
// scaling problem asks for positive diagonal matrices R, C such that the row
// sums of R a C match r and the column sums match c; r and c must share the
// same total mass.
struct NonnegMatrixInstance {
  RMat a;
  RVec r;
  RVec c;

  NonnegMatrixInstance(RMat a_in, RVec r_in, RVec c_in);
  int n() const { return static_cast<int>(a.rows()); }
  double mass() const { return r.sum(); }
};

// l * log sum_ij exp(s_i) a_ij exp(t_j), evaluated in the log domain so rays
// with large s, t stay finite.
double potential(const NonnegMatrixInstance& inst, const RVec& s,
                 const RVec& t);

// potential(s, t) - <r, s> - <c, t>; bounded below exactly when the
// instance is approximately scalable.
double dual_objective(const NonnegMatrixInstance& inst, const RVec& s,
                      const RVec& t);

// Recession value of the potential along the linear ray direction (u, v):
// l * max{ u_i + v_j : a_ij > 0 }.
double recession_matrix(const NonnegMatrixInstance& inst, const RVec& u,
                        const RVec& v);

struct DiagonalScaling {
  RVec rdiag;  // positive row multipliers
  RVec cdiag;  // positive column multipliers
};

// |row sums(R a C) - r|_1 + |col sums(R a C) - c|_1.
double marginal_residual(const NonnegMatrixInstance& inst,
                         const DiagonalScaling& s);

struct SinkhornResult {
  DiagonalScaling scaling;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  // Dual objective at a subsampled set of iterates, ending with the final
  // one. Nonincreasing because each half step is an exact block minimizer.
  std::vector<double> dual_trace;
};

// Alternating row/column balancing. Each half step minimizes the dual
// objective exactly in its block, so the dual decreases monotonically. The
// returned scaling is gauge-fixed to sum(log rdiag) = 0. On iteration
// exhaustion the best iterate seen is returned with converged = false.
// Throws ZeroLine when a row or column of a has no positive entry.
SinkhornResult sinkhorn(const NonnegMatrixInstance& inst, double eps,
                        int max_iter);

// A violated cut: a_ij = 0 on rows x cols while the mass demanded by the
// rows plus the mass demanded by the cols exceeds the total.
struct FlowWitness {
  std::vector<int> rows;
  std::vector<int> cols;
  double violation = 0.0;  // sum_r + sum_c - mass > 0
};

struct FlowResult {
  bool feasible = false;
  double max_flow = 0.0;
  std::optional<FlowWitness> witness;
};

// Exact feasibility of the transport relaxation: a plan supported on
// supp(a) with row sums r and column sums c exists iff the bipartite max
// flow reaches the total mass. Infeasibility comes with a cut witness whose
// violation equals mass - max_flow.
FlowResult approx_scalable_flow(const NonnegMatrixInstance& inst,
                                double tol = 1e-9);

}  // namespace pnscale
