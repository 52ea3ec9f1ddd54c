#include "pnscale_cli/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pnscale/manifold.hpp"
#include "pnscale/recession.hpp"
#include "pnscale/serialization.hpp"

namespace pnscale_cli {

namespace {

using pnscale::Json;
using pnscale::OrderedJson;

Json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw pnscale::ParseError("cannot open input file: " + path);
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw pnscale::ParseError(path + ": " + e.what());
  }
}

struct CommandOutcome {
  int exit_code = kExitOk;
  OrderedJson body;  // merged into the report envelope
};

CommandOutcome run_sinkhorn(const Json& input, const RunConfig& cfg) {
  auto inst = pnscale::matrix_instance_from_json(input);
  auto res = pnscale::sinkhorn(inst, cfg.eps, cfg.budget);
  CommandOutcome out;
  out.body["converged"] = res.converged;
  out.body["residual"] = res.residual;
  out.body["iterations"] = res.iterations;
  out.body["rdiag"] = pnscale::rvec_to_json(res.scaling.rdiag);
  out.body["cdiag"] = pnscale::rvec_to_json(res.scaling.cdiag);
  out.exit_code = res.converged ? kExitOk : kExitIndeterminate;
  return out;
}

CommandOutcome run_opscale(const Json& input, const RunConfig& cfg) {
  auto inst = pnscale::operator_instance_from_json(input);
  auto res = pnscale::scale_alternating(inst.a, inst.target, cfg.eps,
                                        cfg.budget);
  CommandOutcome out;
  out.body["converged"] = res.converged;
  out.body["residual"] = res.residual;
  out.body["sweeps"] = res.sweeps;
  out.body["x"] = pnscale::cmat_to_json(res.x.m());
  out.body["y"] = pnscale::cmat_to_json(res.y.m());
  out.body["objective_trace"] = res.objective_trace;
  out.exit_code = res.converged ? kExitOk : kExitIndeterminate;
  return out;
}

int verdict_exit(pnscale::Verdict v) {
  switch (v) {
    case pnscale::Verdict::BoundedEvidence:
      return kExitOk;
    case pnscale::Verdict::UnboundedWitness:
      return kExitCertified;
    case pnscale::Verdict::Indeterminate:
      return kExitIndeterminate;
  }
  return kExitInputError;
}

CommandOutcome run_certify(const Json& input, const RunConfig& cfg) {
  auto inst = pnscale::operator_instance_from_json(input);
  auto cert = pnscale::certify(inst.a, inst.target, cfg.eps, cfg.delta,
                               cfg.budget);
  CommandOutcome out;
  out.body = pnscale::certificate_to_json(cert);
  out.exit_code = verdict_exit(cert.verdict);
  return out;
}

CommandOutcome run_recession(const Json& input, const RunConfig& cfg) {
  auto inst = pnscale::operator_instance_from_json(input);
  const auto& p = inst.target.p();
  const auto& q = inst.target.q();
  const double closed = pnscale::recession_op(inst.a, p, q);

  // The potential restricted to the flat through the identity in the target
  // frames is a log-sum-exp with one term per support coordinate; probe the
  // ray there so large t cannot overflow. The support cutoff matches the
  // closed form's.
  const double support_tol = 1e-10;
  pnscale::RMat coeff = pnscale::flat_coefficients(inst.a, p.u(), q.u());
  std::vector<std::pair<double, double>> terms;
  for (int i = 0; i < inst.a.n(); ++i) {
    for (int j = 0; j < inst.a.n(); ++j) {
      if (coeff(i, j) > support_tol * support_tol) {
        terms.push_back({p.lambda()(i) + q.lambda()(j), coeff(i, j)});
      }
    }
  }
  auto along = [&](double t) {
    return pnscale::logsumexp_along(terms, inst.a.n(), t);
  };
  auto est = pnscale::ray_quotients(along);

  CommandOutcome out;
  out.body["closed_form"] = closed;
  out.body["estimate"] = est.estimate;
  out.body["gap"] = std::abs(est.estimate - closed);
  out.body["quotients"] = est.quotients;
  out.body["monotone_violation"] = est.monotone_violation;
  out.body["infinite"] = est.infinite;
  return out;
}

CommandOutcome run_busemann(const Json& input, const RunConfig&) {
  if (!input.is_object() || !input.contains("point") ||
      !input.contains("x")) {
    throw pnscale::ParseError("busemann input needs \"point\" and \"x\"");
  }
  auto p = pnscale::boundary_point_from_json(input.at("point"));
  pnscale::PDPoint x(pnscale::cmat_from_json(input.at("x"), "x"));
  const double value = pnscale::busemann(p, x);
  pnscale::CMat grad = pnscale::busemann_grad(p, x);
  CommandOutcome out;
  out.body["value"] = value;
  out.body["grad_norm"] = pnscale::tangent_norm(x, grad);
  out.body["lipschitz"] = p.norm();
  return out;
}

CommandOutcome run_polytope_check(const Json& input, const RunConfig& cfg) {
  CommandOutcome out;
  if (input.is_object() && input.contains("a") && !input.contains("mats")) {
    auto inst = pnscale::matrix_instance_from_json(input);
    auto flow = pnscale::approx_scalable_flow(inst);
    out.body["instance"] = "matrix";
    out.body["feasible"] = flow.feasible;
    out.body["max_flow"] = flow.max_flow;
    if (flow.witness) {
      OrderedJson w;
      w["rows"] = flow.witness->rows;
      w["cols"] = flow.witness->cols;
      w["violation"] = flow.witness->violation;
      out.body["witness"] = std::move(w);
    } else {
      out.body["witness"] = OrderedJson();
    }
    out.exit_code = flow.feasible ? kExitOk : kExitCertified;
    return out;
  }

  auto inst = pnscale::operator_instance_from_json(input);
  out.body["instance"] = "operator";
  if (input.contains("witness") && !input.at("witness").is_null()) {
    // Round-trip validation of a previously emitted witness: recheck the
    // annihilation condition and recompute the slack from scratch.
    auto w = pnscale::witness_from_json(input.at("witness"));
    bool valid = false;
    double slack = 0.0;
    try {
      slack = pnscale::cut_slack(inst.a, inst.target, w.x, w.y);
      valid = slack <= -cfg.delta;
    } catch (const pnscale::NotInSA&) {
      valid = false;
      slack = std::numeric_limits<double>::quiet_NaN();
    }
    out.body["witness_valid"] = valid;
    out.body["slack"] = slack;
    out.exit_code = valid ? kExitCertified : kExitIndeterminate;
    return out;
  }

  auto cert = pnscale::certify(inst.a, inst.target, cfg.eps, cfg.delta,
                               cfg.budget);
  out.body["certificate"] = pnscale::certificate_to_json(cert);
  out.exit_code = verdict_exit(cert.verdict);
  return out;
}

void emit(const RunConfig& cfg, const OrderedJson& report, std::ostream& out) {
  if (cfg.output.empty()) {
    out << report.dump(2) << "\n";
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) {
    throw pnscale::ParseError("cannot open output file: " + cfg.output);
  }
  file << report.dump(2) << "\n";
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  OrderedJson report;
  report["command"] = cfg.command;
  report["input"] = cfg.input_path;
  report["eps"] = cfg.eps;
  report["delta"] = cfg.delta;
  report["budget"] = cfg.budget;
  report["seed"] = cfg.seed;

  int code = kExitOk;
  try {
    if (cfg.format != "json") {
      throw pnscale::ParseError("unsupported format: " + cfg.format);
    }
    if (cfg.eps <= 0 || cfg.delta <= 0 || cfg.budget < 1) {
      throw pnscale::InvalidInstance(
          "eps and delta must be positive, budget at least 1");
    }
    Json input = load_input(cfg.input_path);
    CommandOutcome outcome;
    if (cfg.command == "sinkhorn") {
      outcome = run_sinkhorn(input, cfg);
    } else if (cfg.command == "opscale") {
      outcome = run_opscale(input, cfg);
    } else if (cfg.command == "certify") {
      outcome = run_certify(input, cfg);
    } else if (cfg.command == "recession") {
      outcome = run_recession(input, cfg);
    } else if (cfg.command == "busemann") {
      outcome = run_busemann(input, cfg);
    } else if (cfg.command == "polytope-check") {
      outcome = run_polytope_check(input, cfg);
    } else {
      throw pnscale::ParseError("unknown command: " + cfg.command);
    }
    for (auto& [key, value] : outcome.body.items()) {
      report[key] = std::move(value);
    }
    code = outcome.exit_code;
  } catch (const pnscale::Error& e) {
    report["error"] = e.what();
    code = kExitInputError;
  }

  const auto elapsed = std::chrono::steady_clock::now() - start;
  report["wall_time_ms"] =
      std::chrono::duration<double, std::milli>(elapsed).count();
  emit(cfg, report, out);
  return code;
}

int main_entry(int argc, const char* const* argv) {
  CLI::App app{"Scaling and boundary-geometry toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  const std::vector<std::string> commands = {
      "sinkhorn", "opscale", "certify", "recession", "busemann",
      "polytope-check"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("input", cfg.input_path, "instance JSON file")
        ->required();
    sub->add_option("--eps", cfg.eps, "convergence tolerance");
    sub->add_option("--delta", cfg.delta, "witness violation threshold");
    sub->add_option("--budget", cfg.budget, "iteration/sweep budget");
    sub->add_option("--seed", cfg.seed, "rng seed echoed into the report");
    sub->add_option("--output", cfg.output, "report path (default stdout)");
    sub->add_option("--format", cfg.format, "report format (json)");
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInputError;
  }
  return run(cfg, std::cout);
}

}  // namespace pnscale_cli
