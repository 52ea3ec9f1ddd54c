#pragma once

// Seeded random fixtures and independent oracles shared by the unit and
// acceptance suites. Everything is a deterministic function of the engine
// state, so tests reproduce exactly from their seeds.

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "pnscale/boundary.hpp"
#include "pnscale/manifold.hpp"
#include "pnscale/numerics.hpp"

namespace fixtures {

using pnscale::BoundaryPoint;
using pnscale::CMat;
using pnscale::Complex;
using pnscale::PDPoint;
using pnscale::RMat;
using pnscale::RVec;
using pnscale::SubspaceBasis;

inline std::mt19937_64 engine(unsigned long long seed) {
  return std::mt19937_64(seed);
}

inline CMat ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat out(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      out(r, c) = Complex(gauss(rng), gauss(rng));
    }
  }
  return out;
}

// Haar-distributed via QR of a Ginibre matrix with the R-diagonal phases
// pushed into Q.
inline CMat random_unitary(int n, std::mt19937_64& rng) {
  CMat g = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline CMat random_hermitian(int n, std::mt19937_64& rng, double scale = 1.0) {
  CMat g = ginibre(n, n, rng);
  return scale * (g + g.adjoint()) / 2.0;
}

// Eigenvalues e^{uniform(-spread, spread)} in a Haar frame, so the condition
// number stays near e^{2 spread}.
inline PDPoint random_pd(int n, std::mt19937_64& rng, double spread = 1.0) {
  std::uniform_real_distribution<double> uni(-spread, spread);
  CMat u = random_unitary(n, rng);
  RVec d(n);
  for (int i = 0; i < n; ++i) d(i) = std::exp(uni(rng));
  CMat m = u * d.cast<Complex>().asDiagonal() * u.adjoint();
  return PDPoint((m + m.adjoint()) / 2.0);
}

inline SubspaceBasis random_subspace(int n, int d, std::mt19937_64& rng) {
  if (d == 0) return SubspaceBasis::zero(n);
  return SubspaceBasis(n, random_unitary(n, rng).leftCols(d));
}

// Arranged (descending) uniforms on [lo, hi].
inline RVec arranged_weights(int n, std::mt19937_64& rng, double lo = 0.0,
                             double hi = 1.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> w(n);
  for (double& x : w) x = uni(rng);
  std::sort(w.begin(), w.end(), std::greater<double>());
  RVec out(n);
  for (int i = 0; i < n; ++i) out(i) = w[i];
  return out;
}

inline BoundaryPoint random_boundary(int n, std::mt19937_64& rng,
                                     double lo = 0.0, double hi = 1.0) {
  return BoundaryPoint::canonicalize(arranged_weights(n, rng, lo, hi),
                                     random_unitary(n, rng));
}

inline std::vector<CMat> random_tuple(int n, int m, std::mt19937_64& rng) {
  std::vector<CMat> mats;
  mats.reserve(m);
  for (int k = 0; k < m; ++k) mats.push_back(ginibre(n, n, rng));
  return mats;
}

// Coordinate subspace spanned by { e_i : bit i of mask set }.
inline SubspaceBasis coord_subspace(int n, unsigned mask) {
  int d = 0;
  for (int i = 0; i < n; ++i) d += (mask >> i) & 1u;
  CMat cols = CMat::Zero(n, d);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    if ((mask >> i) & 1u) cols(i, c++) = 1.0;
  }
  return SubspaceBasis(n, cols);
}

// Central difference of a scalar path at 0.
inline double central_diff(const std::function<double(double)>& f,
                           double h = 1e-5) {
  return (f(h) - f(-h)) / (2.0 * h);
}

// Independent intersection-dimension oracle: eigenvalues of P_u P_v P_u
// cluster at 1 exactly on the intersection and stay bounded away from 1
// elsewhere for generic pairs.
inline int intersection_dim_oracle(const SubspaceBasis& u,
                                   const SubspaceBasis& v) {
  CMat m = u.projector() * v.projector() * u.projector();
  Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
  int count = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 1.0 - 1e-6) ++count;
  }
  return count;
}

// Classical Lovász extension of a set function by sort-and-telescope:
// sum_i (w_(i) - w_(i+1)) F({indices of the i largest weights}).
inline double set_lovasz_oracle(
    const RVec& w, const std::function<double(unsigned)>& set_fn) {
  const int n = static_cast<int>(w.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w(a) > w(b); });
  double out = 0.0;
  unsigned mask = 0;
  for (int i = 0; i < n; ++i) {
    mask |= 1u << order[i];
    const double gap = w(order[i]) - (i + 1 < n ? w(order[i + 1]) : 0.0);
    out += gap * set_fn(mask);
  }
  return out;
}

// Greedy vertex of the base polytope of a set function, identity order:
// b_i = F({1..i}) - F({1..i-1}).
inline RVec greedy_base_vertex(int n,
                               const std::function<double(unsigned)>& set_fn) {
  RVec b(n);
  unsigned mask = 0;
  double prev = set_fn(0);
  for (int i = 0; i < n; ++i) {
    mask |= 1u << i;
    const double cur = set_fn(mask);
    b(i) = cur - prev;
    prev = cur;
  }
  return b;
}

}  // namespace fixtures
