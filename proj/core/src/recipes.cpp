#include "chainctl/recipes.hpp"

#include <array>
#include <utility>
#include <vector>

#include "chainctl/errors.hpp"
#include "chainctl/optimizer.hpp"

namespace chainctl {
namespace {

// (N, T_C) in units of 1/J: first duration on a 0.25 grid starting at N/4
// where the best of five restarts reaches fidelity 0.99.
constexpr std::array<std::pair<int, double>, 5> kCriticalTimes{{
    {4, 2.0},
    {5, 2.25},
    {6, 2.75},
    {7, 3.5},
    {8, 4.5},
}};

}  // namespace

std::optional<double> tabulated_critical_time(int spins) {
  for (const auto& [n, t] : kCriticalTimes) {
    if (n == spins) return t;
  }
  return std::nullopt;
}

double recipe_duration(int spins, double margin) {
  if (spins < 2) throw DomainError("chain needs at least two spins");
  if (!(margin >= 0.0)) throw DomainError("margin must be non-negative");
  if (const auto t = tabulated_critical_time(spins)) return (1.0 + margin) * *t;
  std::vector<double> x, y;
  for (const auto& [n, t] : kCriticalTimes) {
    x.push_back(static_cast<double>(n * n));
    y.push_back(t);
  }
  const LinearFit fit = fit_line(x, y);
  return (1.0 + margin) * (fit.intercept + fit.slope * spins * spins);
}

}  // namespace chainctl
