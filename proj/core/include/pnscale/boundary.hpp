#pragma once

#include <utility>
#include <vector>

#include "pnscale/manifold.hpp"

namespace pnscale {

// A point of the cone over the boundary at infinity of the positive definite
// matrices: arranged weights lambda_1 >= ... >= lambda_n attached to the
// complete flag spanned by leading column blocks of a unitary frame u. Only
// the weights and the flag subspaces at indices where the weight strictly
// drops are meaningful; the rest of the frame is an arbitrary completion.
class BoundaryPoint {
 public:
  static BoundaryPoint zero(int n);

  // Accepts an arbitrary weight vector and an invertible frame describing
  // the ray t -> basis exp(t diag lambda) basis†. Sorts the weights
  // descending (stable), carries the columns along, and orthonormalizes the
  // carried basis in column order, all of which keeps the ray's asymptotic
  // class. Throws Singular when a QR pivot falls below tol times the entry
  // scale of the frame.
  static BoundaryPoint canonicalize(RVec lambda, CMat basis,
                                    double tol = 1e-12);

  // Weight w on the subspace x and 0 elsewhere. Requires w >= 0 unless x is
  // the full space.
  static BoundaryPoint from_subspace(const SubspaceBasis& x, double w = 1.0);

  int n() const { return static_cast<int>(lambda_.size()); }
  const RVec& lambda() const { return lambda_; }
  const CMat& u() const { return u_; }

  double norm() const { return lambda_.norm(); }
  bool is_zero(double tol = 1e-12) const;
  BoundaryPoint scaled(double a) const;  // a >= 0

  // Span of the first i frame columns, 0 <= i <= n.
  SubspaceBasis flag_subspace(int i) const;

  // The weighted formal sum over the flag: pairs (U_i, lambda_i -
  // lambda_{i+1}) for indices with a nonzero coefficient, taking
  // lambda_{n+1} = 0. The last admissible entry is (C^n, lambda_n).
  std::vector<std::pair<SubspaceBasis, double>> formal_sum(
      double tol = 1e-12) const;

 private:
  BoundaryPoint(RVec lambda, CMat u);
  RVec lambda_;
  CMat u_;
};

// The arranged weight vector (coordinates in the closed chamber).
RVec chamber_coord(const BoundaryPoint& p);

// True when p and q name the same boundary cone point: equal weights and
// equal flag subspaces at every index where the weight drops by more than
// tol.
bool equals(const BoundaryPoint& p, const BoundaryPoint& q, double tol = 1e-8);

// The building pairing
//   <p, q> = sum_{i,j} (l_i - l_{i+1}) (m_j - m_{j+1}) dim(U_i cap V_j)
// with l_{n+1} = m_{n+1} = 0.
double pairing(const BoundaryPoint& p, const BoundaryPoint& q);

// Cone metric: sqrt(|l|^2 + |m|^2 - 2 <p, q>).
double d_infty(const BoundaryPoint& p, const BoundaryPoint& q);

// Busemann function of p, normalized to 0 at the identity:
//   b_p(x) = - sum_i l_i log( det (u† x u)[i..n] / det (u† x u)[i+1..n] ).
double busemann(const BoundaryPoint& p, const PDPoint& x);

// Riemannian gradient of the Busemann function at x: with u† x^(1/2) = b k
// (b upper triangular, k unitary), the gradient is -u b diag(l) b† u†. Its
// tangent norm at x is |l| for every x.
CMat busemann_grad(const BoundaryPoint& p, const PDPoint& x);

// Frame g of the geodesic ray from base asymptotic to p, so that
// ray(t) = g exp(t diag l) g†. At base = I the frame is just u.
CMat ray_frame(const BoundaryPoint& p, const PDPoint& base);
PDPoint ray_point(const BoundaryPoint& p, const PDPoint& base, double t);

// A boundary direction of a two-factor product space; pairings add.
struct BoundaryPair {
  BoundaryPoint x;
  BoundaryPoint y;
};
double pairing(const BoundaryPair& p, const BoundaryPair& q);
double norm(const BoundaryPair& p);

}  // namespace pnscale
