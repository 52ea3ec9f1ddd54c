#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pnscale/errors.hpp"

namespace pnscale {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Absolute tolerance used for rank decisions on unit-scale data (orthonormal
// bases, products of unitaries). True zeros come out around 1e-13 after a
// chain of QR/SVD passes, while angles between subspaces in generic position
// stay far above this at desk scale.
inline constexpr double kRankTol = 1e-8;

bool is_hermitian(const CMat& x, double tol = 1e-12);

// Largest |entry| deviation from the adjoint, relative to max(1, |x|_max).
double hermitian_defect(const CMat& x);

// Hermitian positive definite square root via the spectral decomposition.
// Throws NotHermitian / NotPositiveDefinite.
CMat pd_sqrt(const CMat& x);

// Factorization a = b * k with b upper triangular with positive real
// diagonal and k unitary. Unique for invertible a, and deterministic: the
// same input always yields the same factors. Throws Singular.
struct RQ {
  CMat b;
  CMat k;
};
RQ rq_positive(const CMat& a);

// A subspace of C^ambient given by an orthonormal column basis. dim 0 (a
// matrix with no columns) encodes the zero subspace.
struct SubspaceBasis {
  int ambient = 0;
  CMat basis;

  SubspaceBasis() = default;
  SubspaceBasis(int ambient_dim, CMat orthonormal_cols);

  int dim() const { return static_cast<int>(basis.cols()); }
  static SubspaceBasis zero(int ambient_dim);
  static SubspaceBasis full(int ambient_dim);
  CMat projector() const;  // basis * basis†
};

// Orthonormalize the columns of cols and drop numerically dependent ones.
SubspaceBasis subspace_from_columns(const CMat& cols, double tol = kRankTol);

// dim(u ∩ v) = dim u + dim v - rank([u v]), rank taken at tol.
int intersection_dim(const SubspaceBasis& u, const SubspaceBasis& v,
                     double tol = kRankTol);

// Orthonormal basis of ker(a) at tolerance tol on the singular values.
SubspaceBasis kernel_basis(const CMat& a, double tol = kRankTol);

struct MeetJoin {
  SubspaceBasis meet;
  SubspaceBasis join;
};
// meet = u ∩ v, join = u + v. Satisfies the modular law
// dim(meet) + dim(join) = dim u + dim v by construction.
MeetJoin subspace_meet_join(const SubspaceBasis& u, const SubspaceBasis& v,
                            double tol = kRankTol);

// Extend an orthonormal basis to a full unitary; the first dim(x) columns of
// the result span x.
CMat complete_to_unitary(const SubspaceBasis& x);

}  // namespace pnscale
