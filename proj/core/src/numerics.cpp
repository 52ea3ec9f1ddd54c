#include "pnscale/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace pnscale {

namespace {

constexpr double kEps = 2.220446049250313e-16;

void require_square(const CMat& x, const char* who) {
  if (x.rows() != x.cols()) {
    throw DimensionMismatch(std::string(who) + ": matrix must be square");
  }
  if (x.rows() == 0) {
    throw DimensionMismatch(std::string(who) + ": matrix must be nonempty");
  }
}

}  // namespace

double hermitian_defect(const CMat& x) {
  if (x.rows() != x.cols()) return 1.0;
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  return (x - x.adjoint()).cwiseAbs().maxCoeff() / scale;
}

bool is_hermitian(const CMat& x, double tol) {
  return x.rows() == x.cols() && hermitian_defect(x) <= tol;
}

CMat pd_sqrt(const CMat& x) {
  require_square(x, "pd_sqrt");
  if (!is_hermitian(x)) {
    throw NotHermitian("pd_sqrt: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMat> es((x + x.adjoint()) / 2.0);
  const RVec& d = es.eigenvalues();
  const double floor = d.size() * kEps * d.cwiseAbs().maxCoeff();
  if (d.minCoeff() <= floor) {
    throw NotPositiveDefinite("pd_sqrt: smallest eigenvalue is not positive");
  }
  return es.eigenvectors() * d.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

RQ rq_positive(const CMat& a) {
  require_square(a, "rq_positive");
  const auto n = a.rows();
  // QR of the row-and-column reversed adjoint turns into the wanted
  // triangular-times-unitary split after undoing the reversal:
  //   reverse(a†) = q * r  =>  a = reverse(r)† * reverse(q)†,
  // and reverse(r)† is upper triangular again.
  CMat flipped = a.adjoint().reverse();
  Eigen::HouseholderQR<CMat> qr(flipped);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = std::abs(r(i, i));
    if (m <= n * kEps * scale) {
      throw Singular("rq_positive: input is numerically singular");
    }
    // Push the diagonal phase into q so r keeps a positive real diagonal.
    const Complex phase = r(i, i) / m;
    r.row(i) *= std::conj(phase);
    q.col(i) *= phase;
  }
  RQ out;
  out.b = r.reverse().adjoint();
  out.k = q.reverse().adjoint();
  return out;
}

SubspaceBasis::SubspaceBasis(int ambient_dim, CMat orthonormal_cols)
    : ambient(ambient_dim), basis(std::move(orthonormal_cols)) {
  if (ambient <= 0) {
    throw DimensionMismatch("SubspaceBasis: ambient dimension must be positive");
  }
  if (basis.size() > 0 && basis.rows() != ambient) {
    throw DimensionMismatch("SubspaceBasis: basis rows must match ambient");
  }
  if (basis.cols() > ambient) {
    throw DimensionMismatch("SubspaceBasis: more columns than ambient dimension");
  }
  if (basis.cols() == 0) {
    basis.resize(ambient, 0);
    return;
  }
  CMat gram = basis.adjoint() * basis;
  gram -= CMat::Identity(basis.cols(), basis.cols());
  if (gram.cwiseAbs().maxCoeff() > 1e-8) {
    throw InvalidInstance("SubspaceBasis: columns are not orthonormal");
  }
}

SubspaceBasis SubspaceBasis::zero(int ambient_dim) {
  return SubspaceBasis(ambient_dim, CMat(ambient_dim, 0));
}

SubspaceBasis SubspaceBasis::full(int ambient_dim) {
  return SubspaceBasis(ambient_dim, CMat::Identity(ambient_dim, ambient_dim));
}

CMat SubspaceBasis::projector() const {
  if (dim() == 0) return CMat::Zero(ambient, ambient);
  return basis * basis.adjoint();
}

SubspaceBasis subspace_from_columns(const CMat& cols, double tol) {
  if (cols.rows() == 0) {
    throw DimensionMismatch("subspace_from_columns: empty ambient space");
  }
  const int n = static_cast<int>(cols.rows());
  if (cols.cols() == 0) return SubspaceBasis::zero(n);
  Eigen::JacobiSVD<CMat> svd(cols, Eigen::ComputeThinU);
  const double thr = tol * std::max(1.0, svd.singularValues()(0));
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > thr) {
    ++rank;
  }
  return SubspaceBasis(n, svd.matrixU().leftCols(rank));
}

int intersection_dim(const SubspaceBasis& u, const SubspaceBasis& v,
                     double tol) {
  if (u.ambient != v.ambient) {
    throw DimensionMismatch("intersection_dim: ambient dimensions differ");
  }
  if (u.dim() == 0 || v.dim() == 0) return 0;
  CMat stacked(u.ambient, u.dim() + v.dim());
  stacked << u.basis, v.basis;
  Eigen::JacobiSVD<CMat> svd(stacked);
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > tol) {
    ++rank;
  }
  return u.dim() + v.dim() - rank;
}

SubspaceBasis kernel_basis(const CMat& a, double tol) {
  if (a.cols() == 0) {
    throw DimensionMismatch("kernel_basis: matrix has no columns");
  }
  const int n = static_cast<int>(a.cols());
  if (a.rows() == 0 || a.cwiseAbs().maxCoeff() == 0.0) {
    return SubspaceBasis::full(n);
  }
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
  const double thr = tol * std::max(1.0, svd.singularValues()(0));
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > thr) {
    ++rank;
  }
  return SubspaceBasis(n, svd.matrixV().rightCols(n - rank));
}

MeetJoin subspace_meet_join(const SubspaceBasis& u, const SubspaceBasis& v,
                            double tol) {
  if (u.ambient != v.ambient) {
    throw DimensionMismatch("subspace_meet_join: ambient dimensions differ");
  }
  const int n = u.ambient;
  MeetJoin out{SubspaceBasis::zero(n), SubspaceBasis::zero(n)};
  if (u.dim() == 0) {
    out.join = v;
    return out;
  }
  if (v.dim() == 0) {
    out.join = u;
    return out;
  }
  // One SVD of [u, -v] drives both answers. A kernel vector (x; y) means
  // u x = v y, which is exactly a point of the intersection, and the left
  // singular vectors with nonzero singular value span the sum. Taking both
  // from the same factorization makes dim(meet) + dim(join) = dim u + dim v
  // hold exactly.
  CMat stacked(n, u.dim() + v.dim());
  stacked << u.basis, -v.basis;
  Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeFullV);
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > tol) {
    ++rank;
  }
  const int meet_dim = u.dim() + v.dim() - rank;
  out.join = SubspaceBasis(n, svd.matrixU().leftCols(rank));
  if (meet_dim > 0) {
    CMat null_x = svd.matrixV().rightCols(meet_dim).topRows(u.dim());
    CMat raw = u.basis * null_x;
    // The mapped kernel vectors are linearly independent, so a plain QR
    // orthonormalization keeps all meet_dim of them.
    Eigen::HouseholderQR<CMat> qr(raw);
    CMat q = qr.householderQ() * CMat::Identity(n, meet_dim);
    out.meet = SubspaceBasis(n, q);
  }
  return out;
}

CMat complete_to_unitary(const SubspaceBasis& x) {
  const int n = x.ambient;
  if (x.dim() == 0) return CMat::Identity(n, n);
  Eigen::HouseholderQR<CMat> qr(x.basis);
  return CMat(qr.householderQ());
}

}  // namespace pnscale
