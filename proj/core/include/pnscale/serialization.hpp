#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "pnscale/boundary.hpp"
#include "pnscale/matrix_scaling.hpp"
#include "pnscale/operator_scaling.hpp"

// JSON conventions, applied everywhere: complex numbers are [re, im] pairs,
// all numbers decimal doubles, and matrices are arrays of columns (so a
// real n x m matrix is m arrays of n reals). Parsers throw ParseError with
// the offending field named; emitters produce ordered_json so reports are
// byte-stable across runs.

namespace pnscale {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

OrderedJson rvec_to_json(const RVec& v);
OrderedJson rmat_to_json(const RMat& m);
OrderedJson cmat_to_json(const CMat& m);

RVec rvec_from_json(const Json& j, const std::string& field);
RMat rmat_from_json(const Json& j, const std::string& field);
CMat cmat_from_json(const Json& j, const std::string& field);

// { "lambda": [...], "basis": [[...]...] }; canonicalized on load, so the
// stored frame may be any spanning unitary and weights any order.
OrderedJson boundary_point_to_json(const BoundaryPoint& p);
BoundaryPoint boundary_point_from_json(const Json& j);

// { "a": [[...]...], "r": [...], "c": [...] }
OrderedJson matrix_instance_to_json(const NonnegMatrixInstance& inst);
NonnegMatrixInstance matrix_instance_from_json(const Json& j);

// { "n": int, "mats": [cmat...], "lambda": [...], "mu": [...],
//   "flagU": cmat|null, "flagV": cmat|null }   (null = standard flag)
struct OperatorInstance {
  OperatorTuple a;
  MarginalTarget target;
};
OrderedJson operator_instance_to_json(const OperatorInstance& inst);
OperatorInstance operator_instance_from_json(const Json& j);

OrderedJson subspace_to_json(const SubspaceBasis& s);
SubspaceBasis subspace_from_json(const Json& j, const std::string& field);

std::string verdict_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

OrderedJson witness_to_json(const ScalingWitness& w);
ScalingWitness witness_from_json(const Json& j);

OrderedJson certificate_to_json(const Certificate& c);

}  // namespace pnscale
