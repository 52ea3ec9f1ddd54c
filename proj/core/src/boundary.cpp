#include "pnscale/boundary.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace pnscale {

namespace {

constexpr double kEps = 2.220446049250313e-16;

bool is_unitary(const CMat& u, double tol = 1e-8) {
  CMat g = u.adjoint() * u;
  g -= CMat::Identity(u.cols(), u.cols());
  return u.rows() == u.cols() && g.cwiseAbs().maxCoeff() <= tol;
}

int rank_at(const CMat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(m);
  int r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()(r) > tol) ++r;
  return r;
}

}  // namespace

BoundaryPoint::BoundaryPoint(RVec lambda, CMat u)
    : lambda_(std::move(lambda)), u_(std::move(u)) {
  const auto n = lambda_.size();
  if (n == 0 || u_.rows() != n || u_.cols() != n) {
    throw DimensionMismatch("BoundaryPoint: weight/frame size mismatch");
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (lambda_(i) < lambda_(i + 1) - 1e-9) {
      throw InvalidInstance("BoundaryPoint: weights must be nonincreasing");
    }
  }
  if (!is_unitary(u_)) {
    throw InvalidInstance("BoundaryPoint: frame must be unitary");
  }
}

BoundaryPoint BoundaryPoint::zero(int n) {
  return BoundaryPoint(RVec::Zero(n), CMat::Identity(n, n));
}

BoundaryPoint BoundaryPoint::canonicalize(RVec lambda, CMat basis,
                                          double tol) {
  const auto n = lambda.size();
  if (basis.rows() != n || basis.cols() != n || n == 0) {
    throw DimensionMismatch("canonicalize: weight/basis size mismatch");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lambda(a) > lambda(b); });
  RVec sorted(n);
  CMat permuted(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sorted(i) = lambda(order[i]);
    permuted.col(i) = basis.col(order[i]);
  }
  // Column-order-preserving orthonormalization: the leading i columns of q
  // span the same subspace as the leading i columns of the permuted basis,
  // so the flag survives.
  Eigen::HouseholderQR<CMat> qr(permuted);
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  const double scale = std::max(kEps, permuted.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(r(i, i)) <= tol * scale) {
      throw Singular("canonicalize: frame is numerically singular");
    }
  }
  return BoundaryPoint(std::move(sorted), CMat(qr.householderQ()));
}

BoundaryPoint BoundaryPoint::from_subspace(const SubspaceBasis& x, double w) {
  const int n = x.ambient;
  if (w < 0 && x.dim() < n) {
    throw InvalidInstance(
        "from_subspace: negative weight only allowed on the full space");
  }
  RVec lambda = RVec::Zero(n);
  lambda.head(x.dim()).setConstant(w);
  return BoundaryPoint(std::move(lambda), complete_to_unitary(x));
}

bool BoundaryPoint::is_zero(double tol) const {
  return lambda_.cwiseAbs().maxCoeff() <= tol;
}

BoundaryPoint BoundaryPoint::scaled(double a) const {
  if (a < 0) {
    throw InvalidInstance("BoundaryPoint::scaled: factor must be >= 0");
  }
  return BoundaryPoint(a * lambda_, u_);
}

SubspaceBasis BoundaryPoint::flag_subspace(int i) const {
  if (i < 0 || i > n()) {
    throw DimensionMismatch("flag_subspace: index out of range");
  }
  return SubspaceBasis(n(), u_.leftCols(i));
}

std::vector<std::pair<SubspaceBasis, double>> BoundaryPoint::formal_sum(
    double tol) const {
  std::vector<std::pair<SubspaceBasis, double>> out;
  for (int i = 1; i <= n(); ++i) {
    const double gap = lambda_(i - 1) - (i < n() ? lambda_(i) : 0.0);
    if (std::abs(gap) > tol) out.emplace_back(flag_subspace(i), gap);
  }
  return out;
}

RVec chamber_coord(const BoundaryPoint& p) { return p.lambda(); }

bool equals(const BoundaryPoint& p, const BoundaryPoint& q, double tol) {
  if (p.n() != q.n()) return false;
  if ((p.lambda() - q.lambda()).cwiseAbs().maxCoeff() > tol) return false;
  for (int i = 1; i < p.n(); ++i) {
    const double gap = p.lambda()(i - 1) - p.lambda()(i);
    if (gap > tol &&
        intersection_dim(p.flag_subspace(i), q.flag_subspace(i)) != i) {
      return false;
    }
  }
  return true;
}

double pairing(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.n() != q.n()) {
    throw DimensionMismatch("pairing: dimensions differ");
  }
  const int n = p.n();
  const CMat w = p.u().adjoint() * q.u();
  auto gap = [n](const RVec& l, int i) {
    return l(i - 1) - (i < n ? l(i) : 0.0);
  };
  // dim(U_i cap V_j) = j - rank of the lower-left block of w: project the
  // leading j columns of q's frame off the leading i columns of p's frame
  // and count what survives.
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double gp = gap(p.lambda(), i);
    if (gp == 0.0) continue;
    for (int j = 1; j <= n; ++j) {
      const double gq = gap(q.lambda(), j);
      if (gq == 0.0) continue;
      int dim_ij;
      if (i == n) {
        dim_ij = j;
      } else if (j == n) {
        dim_ij = i;
      } else {
        dim_ij = j - rank_at(w.block(i, 0, n - i, j), kRankTol);
      }
      total += gp * gq * dim_ij;
    }
  }
  return total;
}

double d_infty(const BoundaryPoint& p, const BoundaryPoint& q) {
  const double s = p.lambda().squaredNorm() + q.lambda().squaredNorm() -
                   2.0 * pairing(p, q);
  return std::sqrt(std::max(0.0, s));
}

double busemann(const BoundaryPoint& p, const PDPoint& x) {
  if (p.n() != x.n()) {
    throw DimensionMismatch("busemann: dimensions differ");
  }
  const int n = p.n();
  CMat w = p.u().adjoint() * x.m() * p.u();
  // One Cholesky of the fully reversed matrix yields every trailing
  // principal minor of w: det w[i..n] = prod of the first n-i+1 squared
  // diagonal entries, so the i-th log-ratio is 2 log l(n-i).
  CMat rev = w.reverse();
  Eigen::LLT<CMat> llt(rev);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("busemann: point is not positive definite");
  }
  CMat l = llt.matrixL();
  double value = 0.0;
  for (int i = 1; i <= n; ++i) {
    value -= p.lambda()(i - 1) * 2.0 * std::log(l(n - i, n - i).real());
  }
  return value;
}

CMat busemann_grad(const BoundaryPoint& p, const PDPoint& x) {
  if (p.n() != x.n()) {
    throw DimensionMismatch("busemann_grad: dimensions differ");
  }
  RQ rq = rq_positive(p.u().adjoint() * x.sqrt());
  CMat g = p.u() * rq.b;
  CMat grad = -g * p.lambda().asDiagonal() * g.adjoint();
  return (grad + grad.adjoint()) / 2.0;
}

CMat ray_frame(const BoundaryPoint& p, const PDPoint& base) {
  if (p.n() != base.n()) {
    throw DimensionMismatch("ray_frame: dimensions differ");
  }
  RQ rq = rq_positive(p.u().adjoint() * base.sqrt());
  return p.u() * rq.b;
}

PDPoint ray_point(const BoundaryPoint& p, const PDPoint& base, double t) {
  CMat g = ray_frame(p, base);
  CMat m = g * (t * p.lambda()).array().exp().matrix().asDiagonal() *
           g.adjoint();
  return PDPoint((m + m.adjoint()) / 2.0);
}

double pairing(const BoundaryPair& p, const BoundaryPair& q) {
  return pairing(p.x, q.x) + pairing(p.y, q.y);
}

double norm(const BoundaryPair& p) {
  return std::sqrt(p.x.lambda().squaredNorm() + p.y.lambda().squaredNorm());
}

}  // namespace pnscale
