#include "chainctl/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "chainctl/errors.hpp"

namespace chainctl {

void Pulse::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("pulse step duration must be positive");
  if (bound && !(*bound > 0.0)) throw DomainError("amplitude bound must be positive");
  for (std::size_t m = 0; m < amplitudes.size(); ++m) {
    if (!std::isfinite(amplitudes[m])) {
      throw DomainError("amplitude " + std::to_string(m + 1) + " is not finite");
    }
    if (bound && std::abs(amplitudes[m]) > *bound * (1.0 + 1e-12)) {
      throw DomainError("amplitude " + std::to_string(m + 1) + " exceeds the bound");
    }
  }
}

Pulse Pulse::constant(std::size_t steps, double duration, double amplitude) {
  if (steps == 0) throw DomainError("a pulse needs at least one step");
  Pulse p;
  p.dt = duration / static_cast<double>(steps);
  p.amplitudes.assign(steps, amplitude);
  p.validate();
  return p;
}

Pulse random_pulse(std::size_t steps, double duration, std::uint64_t seed, double base,
                   double noise, std::optional<double> bound) {
  Pulse p = Pulse::constant(steps, duration, base);
  p.bound = bound;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-noise, noise);
  for (auto& b : p.amplitudes) {
    b += dist(gen);
    if (bound) b = std::clamp(b, -*bound, *bound);
  }
  return p;
}

}  // namespace chainctl
