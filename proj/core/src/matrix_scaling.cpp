#include "pnscale/matrix_scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pnscale {

namespace {

double logsumexp(const std::vector<double>& terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

// Dinic blocking-flow max flow on doubles. Sizes here are tiny (2n + 2
// nodes), so the simple version is plenty.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : graph_(nodes) {}

  void add_edge(int from, int to, double cap) {
    graph_[from].push_back({to, static_cast<int>(graph_[to].size()), cap});
    graph_[to].push_back({from, static_cast<int>(graph_[from].size()) - 1, 0.0});
  }

  double run(int s, int t) {
    double flow = 0.0;
    while (bfs(s, t)) {
      iter_.assign(graph_.size(), 0);
      while (true) {
        double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= kFlowEps) break;
        flow += pushed;
      }
    }
    return flow;
  }

  // Valid after run(): nodes still reachable from the source in the
  // residual graph (the source side of a minimum cut).
  bool reachable(int v) const { return level_[v] >= 0; }

 private:
  static constexpr double kFlowEps = 1e-12;
  struct Edge {
    int to;
    int rev;
    double cap;
  };

  bool bfs(int s, int t) {
    level_.assign(graph_.size(), -1);
    std::vector<int> queue{s};
    level_[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (const Edge& e : graph_[v]) {
        if (e.cap > kFlowEps && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int v, int t, double limit) {
    if (v == t) return limit;
    for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
      Edge& e = graph_[v][i];
      if (e.cap > kFlowEps && level_[e.to] == level_[v] + 1) {
        double pushed = dfs(e.to, t, std::min(limit, e.cap));
        if (pushed > kFlowEps) {
          e.cap -= pushed;
          graph_[e.to][e.rev].cap += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace

NonnegMatrixInstance::NonnegMatrixInstance(RMat a_in, RVec r_in, RVec c_in)
    : a(std::move(a_in)), r(std::move(r_in)), c(std::move(c_in)) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionMismatch("matrix instance: a must be square and nonempty");
  }
  if (r.size() != a.rows() || c.size() != a.rows()) {
    throw DimensionMismatch("matrix instance: marginal sizes must match a");
  }
  if (a.minCoeff() < 0) {
    throw InvalidInstance("matrix instance: a must be entrywise nonnegative");
  }
  if (a.maxCoeff() == 0.0) {
    throw InvalidInstance("matrix instance: a must not be identically zero");
  }
  if (r.minCoeff() <= 0 || c.minCoeff() <= 0) {
    throw InvalidInstance("matrix instance: marginals must be positive");
  }
  if (std::abs(r.sum() - c.sum()) > 1e-9 * std::max(1.0, r.sum())) {
    throw InvalidInstance("matrix instance: marginal sums differ");
  }
}

double potential(const NonnegMatrixInstance& inst, const RVec& s,
                 const RVec& t) {
  if (s.size() != inst.n() || t.size() != inst.n()) {
    throw DimensionMismatch("potential: argument sizes must match");
  }
  std::vector<double> terms;
  terms.reserve(inst.n() * inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      if (inst.a(i, j) > 0) {
        terms.push_back(std::log(inst.a(i, j)) + s(i) + t(j));
      }
    }
  }
  return inst.mass() * logsumexp(terms);
}

double dual_objective(const NonnegMatrixInstance& inst, const RVec& s,
                      const RVec& t) {
  return potential(inst, s, t) - inst.r.dot(s) - inst.c.dot(t);
}

double recession_matrix(const NonnegMatrixInstance& inst, const RVec& u,
                        const RVec& v) {
  if (u.size() != inst.n() || v.size() != inst.n()) {
    throw DimensionMismatch("recession_matrix: argument sizes must match");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < inst.n(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      if (inst.a(i, j) > 0) best = std::max(best, u(i) + v(j));
    }
  }
  return inst.mass() * best;
}

double marginal_residual(const NonnegMatrixInstance& inst,
                         const DiagonalScaling& s) {
  RMat scaled = s.rdiag.asDiagonal() * inst.a * s.cdiag.asDiagonal();
  return (scaled.rowwise().sum() - inst.r).cwiseAbs().sum() +
         (scaled.colwise().sum().transpose() - inst.c).cwiseAbs().sum();
}

SinkhornResult sinkhorn(const NonnegMatrixInstance& inst, double eps,
                        int max_iter) {
  const int n = inst.n();
  for (int i = 0; i < n; ++i) {
    if (inst.a.row(i).maxCoeff() <= 0 || inst.a.col(i).maxCoeff() <= 0) {
      throw ZeroLine("sinkhorn: a has a zero row or column");
    }
  }
  SinkhornResult best;
  best.scaling = {RVec::Ones(n), RVec::Ones(n)};
  best.residual = std::numeric_limits<double>::infinity();

  RVec rdiag = RVec::Ones(n);
  RVec cdiag = RVec::Ones(n);
  const int stride = std::max(1, max_iter / 4096);
  std::vector<double> trace;
  const auto dual_at = [&](const RVec& rd, const RVec& cd) {
    return dual_objective(inst, rd.array().log().matrix(),
                          cd.array().log().matrix());
  };
  for (int it = 1; it <= max_iter; ++it) {
    rdiag = inst.r.cwiseQuotient(inst.a * cdiag);
    cdiag = inst.c.cwiseQuotient(inst.a.transpose() * rdiag);
    // Scale shifts cancel between the two factors; pin them down so the
    // reported multipliers are reproducible.
    const double gauge = std::exp(-rdiag.array().log().mean());
    rdiag *= gauge;
    cdiag /= gauge;
    const double res = marginal_residual(inst, {rdiag, cdiag});
    if (res < best.residual) {
      best.scaling = {rdiag, cdiag};
      best.residual = res;
      best.iterations = it;
    }
    if (res <= eps) {
      best.converged = true;
      trace.push_back(dual_at(rdiag, cdiag));
      break;
    }
    if (it % stride == 0) trace.push_back(dual_at(rdiag, cdiag));
  }
  best.dual_trace = std::move(trace);
  return best;
}

FlowResult approx_scalable_flow(const NonnegMatrixInstance& inst, double tol) {
  const int n = inst.n();
  const double mass = inst.mass();
  const int src = 0, snk = 2 * n + 1;
  MaxFlow mf(2 * n + 2);
  for (int i = 0; i < n; ++i) mf.add_edge(src, 1 + i, inst.r(i));
  for (int j = 0; j < n; ++j) mf.add_edge(1 + n + j, snk, inst.c(j));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Support edges get capacity above the total mass so no minimum cut
      // ever uses one.
      if (inst.a(i, j) > 0) mf.add_edge(1 + i, 1 + n + j, mass + 1.0);
    }
  }
  FlowResult out;
  out.max_flow = mf.run(src, snk);
  out.feasible = mass - out.max_flow <= tol * std::max(1.0, mass);
  if (!out.feasible) {
    FlowWitness w;
    for (int i = 0; i < n; ++i) {
      if (mf.reachable(1 + i)) w.rows.push_back(i);
    }
    for (int j = 0; j < n; ++j) {
      if (!mf.reachable(1 + n + j)) w.cols.push_back(j);
    }
    double demand = 0.0;
    for (int i : w.rows) demand += inst.r(i);
    for (int j : w.cols) demand += inst.c(j);
    w.violation = demand - mass;
    out.witness = std::move(w);
  }
  return out;
}

}  // namespace pnscale
