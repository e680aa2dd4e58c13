#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace chainctl {

/// Piecewise-constant control field: amplitude B_m (units of J) held for dt
/// (units of 1/J) on step m.
struct Pulse {
  double dt = 0.0;
  std::vector<double> amplitudes;
  std::optional<double> bound;  // |B_m| <= bound when present

  std::size_t steps() const { return amplitudes.size(); }
  double duration() const { return dt * static_cast<double>(amplitudes.size()); }

  /// Throws DomainError on dt <= 0, a non-positive bound or an amplitude
  /// outside the bound. An empty pulse is valid.
  void validate() const;

  static Pulse constant(std::size_t steps, double duration, double amplitude);
};

/// Seeded initial guess: base + uniform noise in [-noise, noise] per step,
/// clipped to the bound when one is given.
Pulse random_pulse(std::size_t steps, double duration, std::uint64_t seed, double base = 0.1,
                   double noise = 0.05, std::optional<double> bound = std::nullopt);

}  // namespace chainctl
