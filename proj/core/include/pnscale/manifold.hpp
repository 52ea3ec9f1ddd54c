#pragma once

#include "pnscale/numerics.hpp"

namespace pnscale {

// A point of the manifold of Hermitian positive definite n x n matrices.
// Construction symmetrizes rounding noise away and rejects anything that is
// not Hermitian (to 1e-12, relative) and strictly positive definite.
class PDPoint {
 public:
  explicit PDPoint(CMat m);
  static PDPoint identity(int n);

  const CMat& m() const { return m_; }
  int n() const { return static_cast<int>(m_.rows()); }

  // Cached spectral square root and its inverse.
  const CMat& sqrt() const;
  const CMat& inv_sqrt() const;

 private:
  CMat m_;
  mutable CMat sqrt_, inv_sqrt_;  // lazily filled
};

// Riemannian inner product of two tangent vectors (Hermitian matrices) at x:
// Re tr(x^-1 h1 x^-1 h2).
double tangent_inner(const PDPoint& x, const CMat& h1, const CMat& h2);
double tangent_norm(const PDPoint& x, const CMat& h);

// exp_x(h) = x^(1/2) exp(x^(-1/2) h x^(-1/2)) x^(1/2).
PDPoint exp_point(const PDPoint& x, const CMat& h);

// Inverse of exp_point in its first argument: the tangent vector at x whose
// geodesic reaches y at time 1.
CMat log_map(const PDPoint& x, const PDPoint& y);

// d(x, y) = Frobenius norm of log(x^(-1/2) y x^(-1/2)).
double distance(const PDPoint& x, const PDPoint& y);

// The geodesic from x to y evaluated at time t in [0, 1]:
// x^(1/2) (x^(-1/2) y x^(-1/2))^t x^(1/2).
PDPoint geodesic(const PDPoint& x, const PDPoint& y, double t);

// Converts the Euclidean differential df (Hermitian, so that the directional
// derivative along h is Re tr(df h)) into the Riemannian gradient x df x.
CMat grad_from_diff(const PDPoint& x, const CMat& df);

}  // namespace pnscale
