#include "pnscale/serialization.hpp"

#include "pnscale/errors.hpp"

namespace pnscale {

namespace {

double real_from(const Json& j, const std::string& field) {
  if (!j.is_number()) {
    throw ParseError(field + ": expected a number");
  }
  return j.get<double>();
}

Complex complex_from(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(field + ": expected a [re, im] pair");
  }
  return {real_from(j[0], field), real_from(j[1], field)};
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

}  // namespace

OrderedJson rvec_to_json(const RVec& v) {
  OrderedJson out = OrderedJson::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

OrderedJson rmat_to_json(const RMat& m) {
  OrderedJson out = OrderedJson::array();
  for (int c = 0; c < m.cols(); ++c) {
    OrderedJson col = OrderedJson::array();
    for (int r = 0; r < m.rows(); ++r) col.push_back(m(r, c));
    out.push_back(std::move(col));
  }
  return out;
}

OrderedJson cmat_to_json(const CMat& m) {
  OrderedJson out = OrderedJson::array();
  for (int c = 0; c < m.cols(); ++c) {
    OrderedJson col = OrderedJson::array();
    for (int r = 0; r < m.rows(); ++r) {
      col.push_back(OrderedJson::array({m(r, c).real(), m(r, c).imag()}));
    }
    out.push_back(std::move(col));
  }
  return out;
}

RVec rvec_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field + ": expected an array");
  RVec out(static_cast<int>(j.size()));
  for (int i = 0; i < out.size(); ++i) out(i) = real_from(j[i], field);
  return out;
}

RMat rmat_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(field + ": expected a nonempty array of columns");
  }
  const int cols = static_cast<int>(j.size());
  const int rows = static_cast<int>(j[0].is_array() ? j[0].size() : 0);
  if (rows == 0) throw ParseError(field + ": empty column");
  RMat out(rows, cols);
  for (int c = 0; c < cols; ++c) {
    if (!j[c].is_array() || static_cast<int>(j[c].size()) != rows) {
      throw ParseError(field + ": ragged columns");
    }
    for (int r = 0; r < rows; ++r) out(r, c) = real_from(j[c][r], field);
  }
  return out;
}

CMat cmat_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(field + ": expected a nonempty array of columns");
  }
  const int cols = static_cast<int>(j.size());
  const int rows = static_cast<int>(j[0].is_array() ? j[0].size() : 0);
  if (rows == 0) throw ParseError(field + ": empty column");
  CMat out(rows, cols);
  for (int c = 0; c < cols; ++c) {
    if (!j[c].is_array() || static_cast<int>(j[c].size()) != rows) {
      throw ParseError(field + ": ragged columns");
    }
    for (int r = 0; r < rows; ++r) out(r, c) = complex_from(j[c][r], field);
  }
  return out;
}

OrderedJson boundary_point_to_json(const BoundaryPoint& p) {
  OrderedJson out;
  out["lambda"] = rvec_to_json(p.lambda());
  out["basis"] = cmat_to_json(p.u());
  return out;
}

BoundaryPoint boundary_point_from_json(const Json& j) {
  RVec lambda = rvec_from_json(member(j, "lambda"), "lambda");
  CMat basis = cmat_from_json(member(j, "basis"), "basis");
  if (basis.rows() != basis.cols() || basis.rows() != lambda.size()) {
    throw ParseError("boundary point: basis must be square and match lambda");
  }
  return BoundaryPoint::canonicalize(lambda, basis);
}

OrderedJson matrix_instance_to_json(const NonnegMatrixInstance& inst) {
  OrderedJson out;
  out["a"] = rmat_to_json(inst.a);
  out["r"] = rvec_to_json(inst.r);
  out["c"] = rvec_to_json(inst.c);
  return out;
}

NonnegMatrixInstance matrix_instance_from_json(const Json& j) {
  return NonnegMatrixInstance(rmat_from_json(member(j, "a"), "a"),
                              rvec_from_json(member(j, "r"), "r"),
                              rvec_from_json(member(j, "c"), "c"));
}

OrderedJson operator_instance_to_json(const OperatorInstance& inst) {
  OrderedJson out;
  out["n"] = inst.a.n();
  OrderedJson mats = OrderedJson::array();
  for (const CMat& m : inst.a.mats()) mats.push_back(cmat_to_json(m));
  out["mats"] = std::move(mats);
  out["lambda"] = rvec_to_json(inst.target.p().lambda());
  out["mu"] = rvec_to_json(inst.target.q().lambda());
  out["flagU"] = cmat_to_json(inst.target.p().u());
  out["flagV"] = cmat_to_json(inst.target.q().u());
  return out;
}

OperatorInstance operator_instance_from_json(const Json& j) {
  const Json& jn = member(j, "n");
  if (!jn.is_number_integer() || jn.get<int>() <= 0) {
    throw ParseError("n: expected a positive integer");
  }
  const int n = jn.get<int>();
  const Json& jm = member(j, "mats");
  if (!jm.is_array() || jm.empty()) {
    throw ParseError("mats: expected a nonempty array");
  }
  std::vector<CMat> mats;
  mats.reserve(jm.size());
  for (std::size_t k = 0; k < jm.size(); ++k) {
    CMat m = cmat_from_json(jm[k], "mats[" + std::to_string(k) + "]");
    if (m.rows() != n || m.cols() != n) {
      throw ParseError("mats[" + std::to_string(k) + "]: expected " +
                       std::to_string(n) + " x " + std::to_string(n));
    }
    mats.push_back(std::move(m));
  }
  RVec lambda = rvec_from_json(member(j, "lambda"), "lambda");
  RVec mu = rvec_from_json(member(j, "mu"), "mu");
  if (lambda.size() != n || mu.size() != n) {
    throw ParseError("lambda/mu: expected length n");
  }
  auto flag = [&](const char* key) -> CMat {
    if (!j.contains(key) || j.at(key).is_null()) return CMat::Identity(n, n);
    CMat u = cmat_from_json(j.at(key), key);
    if (u.rows() != n || u.cols() != n) {
      throw ParseError(std::string(key) + ": expected n x n");
    }
    return u;
  };
  BoundaryPoint p = BoundaryPoint::canonicalize(lambda, flag("flagU"));
  BoundaryPoint q = BoundaryPoint::canonicalize(mu, flag("flagV"));
  return {OperatorTuple(n, std::move(mats)),
          MarginalTarget(std::move(p), std::move(q))};
}

OrderedJson subspace_to_json(const SubspaceBasis& s) {
  OrderedJson out;
  out["ambient"] = s.ambient;
  out["dim"] = s.dim();
  out["basis"] = cmat_to_json(s.basis);
  return out;
}

SubspaceBasis subspace_from_json(const Json& j, const std::string& field) {
  const Json& ja = member(j, "ambient");
  if (!ja.is_number_integer() || ja.get<int>() <= 0) {
    throw ParseError(field + ".ambient: expected a positive integer");
  }
  const int ambient = ja.get<int>();
  const Json& jb = member(j, "basis");
  if (jb.is_array() && jb.empty()) {
    return SubspaceBasis::zero(ambient);
  }
  CMat basis = cmat_from_json(jb, field + ".basis");
  if (basis.rows() != ambient) {
    throw ParseError(field + ".basis: wrong ambient dimension");
  }
  return subspace_from_columns(basis);
}

std::string verdict_string(Verdict v) {
  switch (v) {
    case Verdict::BoundedEvidence:
      return "BOUNDED_EVIDENCE";
    case Verdict::UnboundedWitness:
      return "UNBOUNDED_WITNESS";
    case Verdict::Indeterminate:
      return "INDETERMINATE";
  }
  throw InvalidInstance("verdict_string: unknown verdict");
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "BOUNDED_EVIDENCE") return Verdict::BoundedEvidence;
  if (s == "UNBOUNDED_WITNESS") return Verdict::UnboundedWitness;
  if (s == "INDETERMINATE") return Verdict::Indeterminate;
  throw ParseError("verdict: unknown value \"" + s + "\"");
}

OrderedJson witness_to_json(const ScalingWitness& w) {
  OrderedJson out;
  out["x"] = subspace_to_json(w.x);
  out["y"] = subspace_to_json(w.y);
  out["violation"] = w.violation;
  return out;
}

ScalingWitness witness_from_json(const Json& j) {
  ScalingWitness w{subspace_from_json(member(j, "x"), "witness.x"),
                   subspace_from_json(member(j, "y"), "witness.y"), 0.0};
  w.violation = real_from(member(j, "violation"), "witness.violation");
  return w;
}

OrderedJson certificate_to_json(const Certificate& c) {
  OrderedJson out;
  out["verdict"] = verdict_string(c.verdict);
  out["witness"] = c.witness ? witness_to_json(*c.witness) : OrderedJson();
  out["residual"] = c.residual;
  out["best_slack"] = c.best_slack;
  out["sweeps"] = c.sweeps;
  out["objective_trace"] = c.objective_trace;
  return out;
}

}  // namespace pnscale
