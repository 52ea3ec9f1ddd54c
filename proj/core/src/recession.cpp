#include "pnscale/recession.hpp"

#include <cmath>
#include <future>

namespace pnscale {

RayProbe RayProbe::geometric(int doublings) {
  RayProbe p;
  double t = 1.0;
  for (int i = 0; i <= doublings; ++i) {
    p.t_grid.push_back(t);
    t *= 2.0;
  }
  return p;
}

RayEstimate ray_quotients(const std::function<double(double)>& f_along_ray,
                          const RayProbe& probe) {
  if (probe.t_grid.empty()) {
    throw InvalidInstance("ray_quotients: empty grid");
  }
  double prev = 0.0;
  for (double t : probe.t_grid) {
    if (!(t > prev)) {
      throw InvalidInstance("ray_quotients: grid must be positive increasing");
    }
    prev = t;
  }

  std::vector<double> values(probe.t_grid.size());
  const double f0 = f_along_ray(0.0);
  if (probe.concurrent) {
    std::vector<std::future<double>> futs;
    futs.reserve(probe.t_grid.size());
    for (double t : probe.t_grid) {
      futs.push_back(
          std::async(std::launch::async, [&f_along_ray, t] { return f_along_ray(t); }));
    }
    for (std::size_t i = 0; i < futs.size(); ++i) values[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < probe.t_grid.size(); ++i) {
      values[i] = f_along_ray(probe.t_grid[i]);
    }
  }
  if (!std::isfinite(f0)) {
    throw EvaluationFailure("ray_quotients: objective not finite at the base");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw EvaluationFailure("ray_quotients: objective returned a non-finite value");
    }
  }

  RayEstimate est;
  est.quotients.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    est.quotients[i] = (values[i] - f0) / probe.t_grid[i];
  }
  for (std::size_t i = 0; i + 1 < est.quotients.size(); ++i) {
    est.monotone_violation = std::max(
        est.monotone_violation, est.quotients[i] - est.quotients[i + 1]);
  }
  const std::size_t k = values.size() - 1;
  est.estimate = k == 0 ? est.quotients[0]
                        : (values[k] - values[k - 1]) /
                              (probe.t_grid[k] - probe.t_grid[k - 1]);
  est.infinite = est.quotients.back() > probe.cap;
  return est;
}

RayEstimate ray_quotients(const std::function<double(const PDPoint&)>& f,
                          const BoundaryPoint& dir, const PDPoint& base,
                          const RayProbe& probe) {
  // Fix the frame once; each grid point is then a diagonal exponential.
  const CMat g = ray_frame(dir, base);
  const RVec l = dir.lambda();
  auto along = [&](double t) {
    CMat m = g * (t * l).array().exp().matrix().asDiagonal() * g.adjoint();
    return f(PDPoint((m + m.adjoint()) / 2.0));
  };
  return ray_quotients(along, probe);
}

RayEstimate ray_quotients(
    const std::function<double(const PDPoint&, const PDPoint&)>& f,
    const BoundaryPair& dir, const PDPoint& base_x, const PDPoint& base_y,
    const RayProbe& probe) {
  const CMat gx = ray_frame(dir.x, base_x);
  const CMat gy = ray_frame(dir.y, base_y);
  auto along = [&](double t) {
    CMat mx = gx * (t * dir.x.lambda()).array().exp().matrix().asDiagonal() *
              gx.adjoint();
    CMat my = gy * (t * dir.y.lambda()).array().exp().matrix().asDiagonal() *
              gy.adjoint();
    return f(PDPoint((mx + mx.adjoint()) / 2.0),
             PDPoint((my + my.adjoint()) / 2.0));
  };
  return ray_quotients(along, probe);
}

double logsumexp_recession(const std::vector<std::pair<RVec, double>>& terms,
                           const RVec& p) {
  if (terms.empty()) {
    throw EmptyFamily("logsumexp_recession: no terms");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [w, a] : terms) {
    if (!(a > 0)) {
      throw InvalidInstance("logsumexp_recession: coefficients must be positive");
    }
    if (w.size() != p.size()) {
      throw DimensionMismatch("logsumexp_recession: direction size mismatch");
    }
    best = std::max(best, w.dot(p));
  }
  return best;
}

double logsumexp_along(const std::vector<std::pair<double, double>>& terms,
                       double prefactor, double t) {
  if (terms.empty()) {
    throw EmptyFamily("logsumexp_along: no terms");
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& [s, a] : terms) {
    if (!(a > 0)) {
      throw InvalidInstance("logsumexp_along: coefficients must be positive");
    }
    shift = std::max(shift, t * s + std::log(a));
  }
  double acc = 0.0;
  for (const auto& [s, a] : terms) {
    acc += std::exp(t * s + std::log(a) - shift);
  }
  return prefactor * (shift + std::log(acc));
}

}  // namespace pnscale
