#include "pnscale/manifold.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace pnscale {

namespace {

constexpr double kEps = 2.220446049250313e-16;

Eigen::SelfAdjointEigenSolver<CMat> spectral(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian);
  if (es.info() != Eigen::Success) {
    throw Error("eigendecomposition failed to converge");
  }
  return es;
}

CMat symmetrized(const CMat& h) { return (h + h.adjoint()) / 2.0; }

}  // namespace

PDPoint::PDPoint(CMat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw DimensionMismatch("PDPoint: matrix must be square and nonempty");
  }
  if (hermitian_defect(m_) > 1e-12) {
    throw NotHermitian("PDPoint: matrix is not Hermitian");
  }
  m_ = symmetrized(m_);
  auto es = spectral(m_);
  const RVec& d = es.eigenvalues();
  const double floor = d.size() * kEps * d.cwiseAbs().maxCoeff();
  if (!(d.minCoeff() > floor)) {
    throw NotPositiveDefinite("PDPoint: matrix is not positive definite");
  }
  sqrt_ = es.eigenvectors() * d.cwiseSqrt().asDiagonal() *
          es.eigenvectors().adjoint();
  inv_sqrt_ = es.eigenvectors() * d.cwiseSqrt().cwiseInverse().asDiagonal() *
              es.eigenvectors().adjoint();
}

PDPoint PDPoint::identity(int n) { return PDPoint(CMat::Identity(n, n)); }

const CMat& PDPoint::sqrt() const { return sqrt_; }
const CMat& PDPoint::inv_sqrt() const { return inv_sqrt_; }

double tangent_inner(const PDPoint& x, const CMat& h1, const CMat& h2) {
  if (h1.rows() != x.n() || h1.cols() != x.n() || h2.rows() != x.n() ||
      h2.cols() != x.n()) {
    throw DimensionMismatch("tangent_inner: tangent size mismatch");
  }
  const CMat& s = x.inv_sqrt();
  CMat a = s * symmetrized(h1) * s;
  CMat b = s * symmetrized(h2) * s;
  return (a * b).trace().real();
}

double tangent_norm(const PDPoint& x, const CMat& h) {
  return std::sqrt(std::max(0.0, tangent_inner(x, h, h)));
}

PDPoint exp_point(const PDPoint& x, const CMat& h) {
  if (hermitian_defect(h) > 1e-10) {
    throw NotHermitian("exp_point: tangent vector is not Hermitian");
  }
  auto es = spectral(x.inv_sqrt() * symmetrized(h) * x.inv_sqrt());
  CMat e = es.eigenvectors() *
           es.eigenvalues().array().exp().matrix().asDiagonal() *
           es.eigenvectors().adjoint();
  return PDPoint(x.sqrt() * e * x.sqrt());
}

CMat log_map(const PDPoint& x, const PDPoint& y) {
  auto es = spectral(x.inv_sqrt() * y.m() * x.inv_sqrt());
  CMat l = es.eigenvectors() *
           es.eigenvalues().array().log().matrix().asDiagonal() *
           es.eigenvectors().adjoint();
  return symmetrized(x.sqrt() * l * x.sqrt());
}

double distance(const PDPoint& x, const PDPoint& y) {
  auto es = spectral(x.inv_sqrt() * y.m() * x.inv_sqrt());
  return std::sqrt(es.eigenvalues().array().log().square().sum());
}

PDPoint geodesic(const PDPoint& x, const PDPoint& y, double t) {
  auto es = spectral(x.inv_sqrt() * y.m() * x.inv_sqrt());
  CMat p = es.eigenvectors() *
           es.eigenvalues().array().pow(t).matrix().asDiagonal() *
           es.eigenvectors().adjoint();
  return PDPoint(x.sqrt() * p * x.sqrt());
}

CMat grad_from_diff(const PDPoint& x, const CMat& df) {
  if (df.rows() != x.n() || df.cols() != x.n()) {
    throw DimensionMismatch("grad_from_diff: size mismatch");
  }
  return symmetrized(x.m() * symmetrized(df) * x.m());
}

}  // namespace pnscale
