#include <cmath>

#include "chainctl/detail/parallel.hpp"
#include "chainctl/errors.hpp"
#include "chainctl/optimizer.hpp"
#include "chainctl/rng.hpp"

namespace chainctl {

MinTimeResult min_time_scan(const ControlProblem& problem, double threshold,
                            std::span<const double> durations, const MinTimeOptions& options) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("threshold must lie in (0, 1)");
  if (options.restarts < 1) throw DomainError("restarts must be at least 1");
  if (options.steps < 1) throw DomainError("pulse needs at least one step");
  if (durations.empty()) throw DomainError("duration grid is empty");
  for (std::size_t i = 0; i < durations.size(); ++i) {
    if (!(durations[i] > 0.0)) throw DomainError("durations must be positive");
    if (i > 0 && !(durations[i] > durations[i - 1])) {
      throw DomainError("durations must be strictly ascending");
    }
  }

  const auto restarts = static_cast<std::size_t>(options.restarts);
  const auto run_row = [&](std::size_t i) {
    std::vector<OptimizationResult> runs(restarts);
    detail::parallel_for(restarts, options.jobs, [&](std::size_t r) {
      const Pulse init = random_pulse(options.steps, durations[i], derive_seed(options.seed, {i, r}),
                                      options.init_base, options.init_noise, options.optimizer.bound);
      runs[r] = optimize_pulse(problem, init, options.optimizer);
    });
    return runs;
  };

  MinTimeResult out;
  out.threshold = threshold;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    const std::vector<OptimizationResult> runs = run_row(i);
    MinTimeRow row;
    row.duration = durations[i];
    row.best_fidelity = -1.0;
    for (std::size_t r = 0; r < restarts; ++r) {
      row.restart_fidelities.push_back(runs[r].fidelity);
      row.restart_status.push_back(runs[r].status);
      if (runs[r].fidelity > row.best_fidelity) {
        row.best_fidelity = runs[r].fidelity;
        row.best_restart = r;
      }
    }
    out.best_pulses.push_back(runs[row.best_restart].pulse);
    const bool reached = row.best_fidelity >= threshold;
    if (!out.critical_time && reached) out.critical_time = row.duration;
    out.table.push_back(std::move(row));
    if (reached && options.stop_at_critical) break;
  }
  return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("fit_line needs equally long inputs");
  if (x.size() < 2) throw DomainError("fit_line needs at least two points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line needs at least two distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace chainctl
