#pragma once

#include <cstddef>
#include <optional>

namespace chainctl {

/// Default reproduction settings: p = 64 steps, five restarts and a horizon
/// of the tabulated critical time (fidelity threshold 0.99) plus 20%.
inline constexpr std::size_t kRecipeSteps = 64;
inline constexpr int kRecipeRestarts = 5;
inline constexpr double kRecipeMargin = 0.2;

/// Critical time from this library's own min-time scan (threshold 0.99,
/// p = 64, five restarts), or nothing outside the tabulated range.
std::optional<double> tabulated_critical_time(int spins);

/// (1 + margin) * T_C; outside the table T_C comes from the quadratic fit
/// a + b N^2 of the tabulated values.
double recipe_duration(int spins, double margin = kRecipeMargin);

}  // namespace chainctl
