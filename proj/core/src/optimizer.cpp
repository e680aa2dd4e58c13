#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "chainctl/errors.hpp"
#include "chainctl/optimizer.hpp"

namespace chainctl {

std::string to_string(OptimizationStatus status) {
  switch (status) {
    case OptimizationStatus::Converged:
      return "CONVERGED";
    case OptimizationStatus::Stalled:
      return "STALLED";
    case OptimizationStatus::IterationLimit:
      return "ITERATION_LIMIT";
  }
  return "UNKNOWN";
}

namespace {

using Eigen::VectorXd;

constexpr double kArmijo = 1e-4;
constexpr double kCurvature = 0.9;
constexpr int kLineSearchEvals = 40;

// Minimises f = -K. Every evaluation returns f and its gradient.
class Evaluator {
 public:
  Evaluator(const ControlProblem& problem, Pulse pulse) : problem_(problem), pulse_(std::move(pulse)) {}

  std::pair<double, VectorXd> operator()(const VectorXd& x) {
    ++count_;
    pulse_.amplitudes.assign(x.data(), x.data() + x.size());
    ObjectiveValue v = objective_and_gradient(pulse_, problem_);
    if (!std::isfinite(v.value)) throw NumericalError("objective is not finite");
    VectorXd g = -Eigen::Map<VectorXd>(v.gradient.data(), static_cast<Eigen::Index>(v.gradient.size()));
    return {-v.value, std::move(g)};
  }

  int count() const { return count_; }

 private:
  const ControlProblem& problem_;
  Pulse pulse_;
  int count_ = 0;
};

struct Point {
  VectorXd x;
  double f = 0.0;
  VectorXd g;
};

double cubic_min(double a, double fa, double da, double b, double fb, double db) {
  // Minimiser of the cubic interpolating (a, fa, da) and (b, fb, db),
  // falling back to bisection when it is not well defined or too close to an end.
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  double t = 0.5 * (a + b);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double denom = db - da + 2.0 * d2;
    if (denom != 0.0) t = b - (b - a) * (db + d2 - d1) / denom;
  }
  const double lo = std::min(a, b), hi = std::max(a, b);
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin) t = 0.5 * (a + b);
  return t;
}

// Strong Wolfe line search along d from `start`. Returns the accepted point
// or nothing when no step with a strict decrease was found.
std::optional<Point> wolfe_search(Evaluator& eval, const Point& start, const VectorXd& d,
                                  double alpha0, double alpha_max) {
  const double f0 = start.f;
  const double d0 = start.g.dot(d);
  int evals = 0;
  std::optional<Point> best;

  const auto probe = [&](double alpha) {
    ++evals;
    Point p;
    p.x = start.x + alpha * d;
    std::tie(p.f, p.g) = eval(p.x);
    if (p.f < f0 && (!best || p.f < best->f) && p.f <= f0 + kArmijo * alpha * d0) best = p;
    return p;
  };

  const auto zoom = [&](double lo, Point plo, double hi, Point phi) -> std::optional<Point> {
    while (evals < kLineSearchEvals) {
      const double alpha = cubic_min(lo, plo.f, plo.g.dot(d), hi, phi.f, phi.g.dot(d));
      Point p = probe(alpha);
      if (p.f > f0 + kArmijo * alpha * d0 || p.f >= plo.f) {
        hi = alpha;
        phi = std::move(p);
        continue;
      }
      const double dp = p.g.dot(d);
      if (std::abs(dp) <= -kCurvature * d0) return p;
      if (dp * (hi - lo) >= 0.0) {
        hi = lo;
        phi = plo;
      }
      lo = alpha;
      plo = std::move(p);
      if (std::abs(hi - lo) < 1e-14 * std::max(1.0, std::abs(lo))) break;
    }
    return best;
  };

  double prev_alpha = 0.0;
  Point prev = start;
  double alpha = std::min(alpha0, alpha_max);
  while (evals < kLineSearchEvals) {
    Point p = probe(alpha);
    if (p.f > f0 + kArmijo * alpha * d0 || (evals > 1 && p.f >= prev.f)) {
      return zoom(prev_alpha, prev, alpha, p);
    }
    const double dp = p.g.dot(d);
    if (std::abs(dp) <= -kCurvature * d0) return p;
    if (dp >= 0.0) return zoom(alpha, p, prev_alpha, prev);
    if (alpha >= alpha_max) return p;
    prev_alpha = alpha;
    prev = std::move(p);
    alpha = std::min(2.0 * alpha, alpha_max);
  }
  return best;
}

VectorXd project(VectorXd x, std::optional<double> bound) {
  if (bound) x = x.cwiseMax(-*bound).cwiseMin(*bound);
  return x;
}

// Projected Armijo backtracking along the path P(x + alpha d).
std::optional<Point> projected_search(Evaluator& eval, const Point& start, const VectorXd& d,
                                      double bound) {
  double alpha = 1.0;
  for (int i = 0; i < kLineSearchEvals; ++i, alpha *= 0.5) {
    Point p;
    p.x = project(start.x + alpha * d, bound);
    const VectorXd step = p.x - start.x;
    if (step.lpNorm<Eigen::Infinity>() == 0.0) break;
    std::tie(p.f, p.g) = eval(p.x);
    if (p.f < start.f && p.f <= start.f + kArmijo * start.g.dot(step)) return p;
  }
  return std::nullopt;
}

// Coordinates pinned at the box with the gradient pushing outward.
std::vector<bool> active_set(const Point& p, std::optional<double> bound) {
  std::vector<bool> active(static_cast<std::size_t>(p.x.size()), false);
  if (!bound) return active;
  const double eps = 1e-12 * std::max(1.0, *bound);
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    const bool at_lower = p.x(i) <= -*bound + eps && p.g(i) > 0.0;
    const bool at_upper = p.x(i) >= *bound - eps && p.g(i) < 0.0;
    active[static_cast<std::size_t>(i)] = at_lower || at_upper;
  }
  return active;
}

VectorXd masked(VectorXd v, const std::vector<bool>& active) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (active[static_cast<std::size_t>(i)]) v(i) = 0.0;
  }
  return v;
}

}  // namespace

OptimizationResult optimize_pulse(const ControlProblem& problem, const Pulse& init,
                                  const OptimizerOptions& options) {
  if (init.amplitudes.empty()) throw DomainError("initial pulse has no steps");
  if (!(init.dt > 0.0)) throw DomainError("pulse step duration must be positive");
  if (options.max_iterations < 0) throw DomainError("max_iterations must be non-negative");
  const std::optional<double> bound = options.bound ? options.bound : init.bound;
  if (bound && !(*bound > 0.0)) throw DomainError("amplitude bound must be positive");

  Pulse work = init;
  work.bound = bound;
  Evaluator eval(problem, work);
  const auto p = static_cast<Eigen::Index>(init.amplitudes.size());

  Point cur;
  cur.x = project(Eigen::Map<const VectorXd>(init.amplitudes.data(), p), bound);
  std::tie(cur.f, cur.g) = eval(cur.x);

  OptimizationResult result;
  result.trace.push_back(-cur.f);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(p, p);
  bool fresh = true;  // hinv is the identity
  std::ostringstream diag;

  const auto finish = [&](OptimizationStatus status) {
    result.status = status;
    work.amplitudes.assign(cur.x.data(), cur.x.data() + p);
    result.pulse = work;
    result.fidelity = -cur.f;
    result.concurrence = final_concurrence(work, problem);
    result.evaluations = eval.count();
    result.diagnostics = diag.str();
    return result;
  };

  while (true) {
    const std::vector<bool> active = active_set(cur, bound);
    const VectorXd pg = masked(cur.g, active);
    result.gradient_norm = pg.norm();
    if (result.gradient_norm < options.gradient_tol) {
      diag << "projected gradient norm below tolerance";
      return finish(OptimizationStatus::Converged);
    }
    if (options.target_fidelity && -cur.f >= *options.target_fidelity) {
      diag << "target fidelity reached";
      return finish(OptimizationStatus::Converged);
    }
    if (result.iterations >= options.max_iterations) {
      diag << "iteration limit reached";
      return finish(OptimizationStatus::IterationLimit);
    }

    VectorXd d = -masked(hinv * pg, active);
    if (!(d.dot(pg) < 0.0)) {
      hinv.setIdentity();
      fresh = true;
      d = -pg;
    }

    std::optional<Point> next;
    const auto search = [&](const VectorXd& dir) {
      if (bound) return projected_search(eval, cur, dir, *bound);
      // The first step from an identity model is scaled to move amplitudes by
      // at most one unit; afterwards the BFGS scaling makes alpha = 1 natural.
      const double alpha0 = fresh ? std::min(1.0, 1.0 / dir.lpNorm<Eigen::Infinity>()) : 1.0;
      return wolfe_search(eval, cur, dir, alpha0, 1e3 * std::max(1.0, alpha0));
    };
    next = search(d);
    if (!next && !fresh) {
      hinv.setIdentity();
      fresh = true;
      d = -pg;
      next = search(d);
    }
    if (!next) {
      diag << "line search found no decrease along the steepest-descent direction"
           << " (projected gradient norm " << result.gradient_norm << ")";
      return finish(OptimizationStatus::Stalled);
    }

    ++result.iterations;
    const std::vector<bool> frozen = active_set(*next, bound);
    const VectorXd s = masked(next->x - cur.x, frozen);
    const VectorXd y = masked(next->g - cur.g, frozen);
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm() && sy > 0.0) {
      if (fresh) {
        hinv *= sy / y.squaredNorm();
        fresh = false;
      }
      const double rho = 1.0 / sy;
      const VectorXd hy = hinv * y;
      const double yhy = y.dot(hy);
      hinv += ((sy + yhy) * rho * rho) * (s * s.transpose()) -
              rho * (hy * s.transpose() + s * hy.transpose());
    }

    const double change = cur.f - next->f;
    cur = std::move(*next);
    result.trace.push_back(-cur.f);
    if (change < options.fidelity_change_tol) {
      result.gradient_norm = masked(cur.g, active_set(cur, bound)).norm();
      diag << "fidelity change " << change << " below tolerance";
      return finish(OptimizationStatus::Converged);
    }
  }
}

}  // namespace chainctl
