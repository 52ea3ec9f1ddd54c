#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "pnscale/sublattice.hpp"
#include "support/fixtures.hpp"

using namespace pnscale;

namespace {

// All coordinate subspaces of C^n, which form a meet/join closed family.
SubspaceFamily coordinate_family(int n) {
  SubspaceFamily fam(n);
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    fam.add(fixtures::coord_subspace(n, mask));
  }
  return fam;
}

LatticeFunction dim_function(int n) {
  return LatticeFunction(
      n, [](const SubspaceBasis& x) { return static_cast<double>(x.dim()); });
}

// Intersection profile against a fixed subspace; + is supermodular, - is
// submodular.
LatticeFunction intersection_function(int n, const SubspaceBasis& v,
                                      double sign) {
  return LatticeFunction(n, [v, sign](const SubspaceBasis& x) {
    return sign * fixtures::intersection_dim_oracle(v, x);
  });
}

SubspaceBasis line(int n, const CVec& v) {
  CMat col = v;
  col /= col.norm();
  return SubspaceBasis(n, col);
}

}  // namespace

TEST_SUITE("sublattice") {

TEST_CASE("family construction, dedup and lookup") {
  SubspaceFamily fam(3);
  // Zero and full space are there from the start.
  CHECK(fam.size() == 2);
  CHECK(fam.find(SubspaceBasis::zero(3)) >= 0);
  CHECK(fam.find(SubspaceBasis::full(3)) >= 0);

  const int i = fam.add(fixtures::coord_subspace(3, 0b011));
  CHECK(fam.size() == 3);
  // The same plane through a different orthonormal basis is a duplicate.
  CMat cols(3, 2);
  cols.col(0) = CVec::Unit(3, 0) + CVec::Unit(3, 1);
  cols.col(1) = CVec::Unit(3, 0) - CVec::Unit(3, 1);
  cols /= std::sqrt(2.0);
  CHECK(fam.add(SubspaceBasis(3, cols)) == i);
  CHECK(fam.size() == 3);

  CHECK(fam.find(fixtures::coord_subspace(3, 0b101)) == -1);
  CHECK_THROWS_AS(fam.add(SubspaceBasis::full(2)), DimensionMismatch);
  CHECK_THROWS_AS(SubspaceFamily(0), DimensionMismatch);
}

TEST_CASE("close saturates small configurations exactly") {
  // Three lines inside a common plane of C^3: the only new element the
  // closure needs is that plane.
  SubspaceFamily fam(3);
  fam.add(fixtures::coord_subspace(3, 0b001));
  fam.add(fixtures::coord_subspace(3, 0b010));
  fam.add(line(3, CVec::Unit(3, 0) + CVec::Unit(3, 1)));
  CHECK(!fam.closed_under_meet_join());
  fam.close(16);
  CHECK(fam.size() == 6);
  CHECK(fam.closed_under_meet_join());
  CHECK(fam.find(fixtures::coord_subspace(3, 0b011)) >= 0);

  SubspaceFamily coords = coordinate_family(3);
  CHECK(coords.closed_under_meet_join());
  const int before = coords.size();
  coords.close(64);
  CHECK(coords.size() == before);
}

TEST_CASE("close throws when the generated lattice exceeds the cap") {
  // Four generic lines in C^3 generate new lines and planes without end
  // (the closure keeps producing fresh elements), so a finite cap trips.
  auto rng = fixtures::engine(91);
  SubspaceFamily fam(3);
  for (int k = 0; k < 4; ++k) {
    fam.add(fixtures::random_subspace(3, 1, rng));
  }
  CHECK_THROWS_AS(fam.close(48), InvalidInstance);
}

TEST_CASE("lattice functions are normalized at the zero subspace") {
  const LatticeFunction rho(
      3, [](const SubspaceBasis& x) { return x.dim() + 7.5; });
  CHECK(rho(SubspaceBasis::zero(3)) == 0.0);
  CHECK(rho(SubspaceBasis::full(3)) == 3.0);
  CHECK(rho(fixtures::coord_subspace(3, 0b011)) == 2.0);
  CHECK_THROWS_AS(rho(SubspaceBasis::full(2)), DimensionMismatch);
  CHECK_THROWS_AS(LatticeFunction(3, nullptr), InvalidInstance);
}

TEST_CASE("submodularity_check accepts modular and submodular profiles") {
  const SubspaceFamily fam = coordinate_family(3);

  const SubmodularityReport modular =
      submodularity_check(dim_function(3), fam);
  CHECK(modular.ok);
  CHECK(modular.min_slack == 0.0);
  CHECK(modular.violations.empty());

  const SubspaceBasis v = line(3, CVec::Unit(3, 0) + CVec::Unit(3, 1));
  const SubmodularityReport sub =
      submodularity_check(intersection_function(3, v, -1.0), fam);
  CHECK(sub.ok);
  CHECK(sub.min_slack >= 0.0);
}

TEST_CASE("submodularity_check pins the supermodular violation") {
  const SubspaceFamily fam = coordinate_family(3);
  const SubspaceBasis v = line(3, CVec::Unit(3, 0) + CVec::Unit(3, 1));
  const LatticeFunction rho = intersection_function(3, v, 1.0);

  const SubmodularityReport rep = submodularity_check(rho, fam);
  CHECK(!rep.ok);
  CHECK(rep.min_slack == -1.0);
  REQUIRE(!rep.violations.empty());
  for (const SubmodularityViolation& viol : rep.violations) {
    CHECK(viol.deficit == 1.0);
    // The reported meet and join reproduce the deficit.
    const double recomputed = rho(viol.meet) + rho(viol.join) -
                              rho(fam[viol.i]) - rho(fam[viol.j]);
    CHECK(recomputed == viol.deficit);
  }

  // Deterministic: the scan order is the family order.
  const SubmodularityReport rep2 = submodularity_check(rho, fam);
  REQUIRE(rep2.violations.size() == rep.violations.size());
  for (size_t k = 0; k < rep.violations.size(); ++k) {
    CHECK(rep2.violations[k].i == rep.violations[k].i);
    CHECK(rep2.violations[k].j == rep.violations[k].j);
  }
}

TEST_CASE("concurrent oracles agree with sequential evaluation") {
  const SubspaceFamily fam = coordinate_family(4);
  auto rng = fixtures::engine(92);
  const SubspaceBasis v = fixtures::random_subspace(4, 2, rng);
  const auto raw = [v](const SubspaceBasis& x) {
    return -static_cast<double>(fixtures::intersection_dim_oracle(v, x));
  };
  const SubmodularityReport seq =
      submodularity_check(LatticeFunction(4, raw, false), fam);
  const SubmodularityReport par =
      submodularity_check(LatticeFunction(4, raw, true), fam);
  CHECK(seq.ok == par.ok);
  CHECK(seq.min_slack == par.min_slack);
  CHECK(seq.violations.size() == par.violations.size());
}

TEST_CASE("lovasz extension fixed values and homogeneity") {
  RVec lam(3);
  lam << 3.0, 2.0, 1.0;
  const BoundaryPoint p =
      BoundaryPoint::canonicalize(lam, CMat::Identity(3, 3));
  // For the dimension profile the extension telescopes to the weight sum.
  CHECK(std::abs(lovasz(dim_function(3), p) - 6.0) <= 1e-12);

  auto rng = fixtures::engine(93);
  const SubspaceBasis x = fixtures::random_subspace(3, 2, rng);
  const LatticeFunction rho = intersection_function(3, x, -1.0);
  // On a single-subspace point the extension is just the value there.
  CHECK(lovasz(rho, BoundaryPoint::from_subspace(x)) == rho(x));
  // Positive homogeneity in the weights.
  const BoundaryPoint q = fixtures::random_boundary(3, rng);
  CHECK(std::abs(lovasz(rho, q.scaled(2.5)) - 2.5 * lovasz(rho, q)) <=
        1e-12 * std::max(1.0, std::abs(lovasz(rho, q))));
  CHECK(lovasz(rho, BoundaryPoint::zero(3)) == 0.0);
}

TEST_CASE("lovasz of a pairing profile recovers the pairing") {
  auto rng = fixtures::engine(94);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const BoundaryPoint p = fixtures::random_boundary(n, rng);
    const BoundaryPoint q = fixtures::random_boundary(n, rng);
    const LatticeFunction rho(n, [&q](const SubspaceBasis& x) {
      return x.dim() == 0
                 ? 0.0
                 : -pairing(q, BoundaryPoint::from_subspace(x));
    });
    const double via_flag = lovasz(rho, p);
    CHECK(std::abs(via_flag + pairing(q, p)) <=
          1e-9 * std::max(1.0, std::abs(via_flag)));
  }
}

TEST_CASE("lovasz agrees with the classical extension on coordinate flags") {
  auto rng = fixtures::engine(95);
  std::uniform_real_distribution<double> uni(0.0, 2.0);
  const int n = 4;
  for (int trial = 0; trial < 20; ++trial) {
    // Any set function with F(empty) = 0 works; the identity is structural.
    std::vector<double> table(1u << n, 0.0);
    for (size_t s = 1; s < table.size(); ++s) table[s] = uni(rng);
    const auto set_fn = [&table](unsigned mask) { return table[mask]; };

    RVec w(n);
    for (int i = 0; i < n; ++i) w(i) = uni(rng);
    const LatticeFunction rho(n, [&](const SubspaceBasis& x) {
      // Recover the coordinate mask from the projector diagonal.
      unsigned mask = 0;
      const CMat proj = x.projector();
      for (int i = 0; i < n; ++i) {
        if (proj(i, i).real() > 0.5) mask |= 1u << i;
      }
      return set_fn(mask);
    });
    const BoundaryPoint p =
        BoundaryPoint::canonicalize(w, CMat::Identity(n, n));
    CHECK(std::abs(lovasz(rho, p) - fixtures::set_lovasz_oracle(w, set_fn)) <=
          1e-10);
  }
}

TEST_CASE("base_membership separates members from violators") {
  const SubspaceFamily fam = coordinate_family(2);
  const LatticeFunction rho = dim_function(2);

  const BaseMembership in = base_membership(
      rho, BoundaryPoint::canonicalize(RVec::Ones(2), CMat::Identity(2, 2)),
      fam);
  CHECK(in.member);
  CHECK(in.worst_slack == 0.0);
  CHECK(std::abs(in.top_gap) <= 1e-12);

  RVec lam(2);
  lam << 1.5, 0.5;
  const BaseMembership out = base_membership(
      rho, BoundaryPoint::canonicalize(lam, CMat::Identity(2, 2)), fam);
  CHECK(!out.member);
  CHECK(out.worst_slack == -0.5);
  CHECK(out.worst_index == fam.find(fixtures::coord_subspace(2, 0b01)));

  // All slacks positive but mass short of the full-space value: the top gap
  // alone rejects the point.
  const BaseMembership low = base_membership(
      rho,
      BoundaryPoint::canonicalize(RVec::Ones(2) * 0.5, CMat::Identity(2, 2)),
      fam);
  CHECK(!low.member);
  CHECK(low.worst_slack >= 0.0);
  CHECK(low.top_gap == -1.0);
}

TEST_CASE("greedy increments give a base member of a rank profile") {
  const int n = 3;
  const auto set_fn = [](unsigned mask) {
    int c = 0;
    for (int i = 0; i < 3; ++i) c += (mask >> i) & 1u;
    return static_cast<double>(std::min(c, 2));
  };
  const RVec b = fixtures::greedy_base_vertex(n, set_fn);
  RVec want(3);
  want << 1.0, 1.0, 0.0;
  CHECK((b - want).norm() == 0.0);

  const LatticeFunction rho(n, [](const SubspaceBasis& x) {
    return static_cast<double>(std::min(x.dim(), 2));
  });
  const SubspaceFamily fam = coordinate_family(n);
  const BaseMembership mem = base_membership(
      rho, BoundaryPoint::canonicalize(b, CMat::Identity(n, n)), fam);
  CHECK(mem.member);
  CHECK(mem.worst_slack >= 0.0);
}

TEST_CASE("greedy vertices are extreme for the lovasz extension") {
  // rho(X) = min(dim X, 2) on C^3 with weights (3, 2, 1): the extension
  // equals the pairing against the aligned greedy vertex and dominates the
  // pairing against every permuted one.
  const int n = 3;
  const LatticeFunction rho(n, [](const SubspaceBasis& x) {
    return static_cast<double>(std::min(x.dim(), 2));
  });
  RVec lam(3);
  lam << 3.0, 2.0, 1.0;
  const BoundaryPoint p =
      BoundaryPoint::canonicalize(lam, CMat::Identity(3, 3));
  const double ext = lovasz(rho, p);
  CHECK(ext == 5.0);

  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3);
  do {
    // Greedy along this order: increments of min(k, 2) land on the first
    // two visited coordinates.
    RVec vertex = RVec::Zero(3);
    vertex(perm[0]) = 1.0;
    vertex(perm[1]) = 1.0;
    const BoundaryPoint v =
        BoundaryPoint::canonicalize(vertex, CMat::Identity(3, 3));
    CHECK(pairing(p, v) <= ext + 1e-12);
    if (perm[0] == 0 && perm[1] == 1) {
      CHECK(pairing(p, v) == ext);
    }
  } while (std::next_permutation(perm, perm + 3));
}

TEST_CASE("pairing profiles are submodular over coordinate families") {
  auto rng = fixtures::engine(96);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 2);
    const BoundaryPoint q = fixtures::random_boundary(n, rng);
    const LatticeFunction rho(n, [&q](const SubspaceBasis& x) {
      return x.dim() == 0
                 ? 0.0
                 : -pairing(q, BoundaryPoint::from_subspace(x));
    });
    const SubmodularityReport rep =
        submodularity_check(rho, coordinate_family(n));
    CHECK(rep.ok);
    CHECK(rep.min_slack >= -1e-9);
  }
}

}  // TEST_SUITE
