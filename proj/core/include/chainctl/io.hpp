#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "chainctl/controllability.hpp"
#include "chainctl/hamiltonians.hpp"
#include "chainctl/operator.hpp"
#include "chainctl/optimizer.hpp"
#include "chainctl/pulse.hpp"
#include "chainctl/robustness.hpp"

namespace chainctl {

/// Thrown when a JSON document cannot be read; the message names the offending field.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kArtifactVersion = "chainctl-0.3.0";

// Operators: {"dim", "basis": {"N", "n"}, "entries": [[re, im], ...]} row-major.
std::string operator_to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(std::string_view text);

struct PulseProvenance {
  std::uint64_t seed = 0;
  std::string options = "{}";  // JSON object text
  double fidelity = 0.0;
  std::string config_hash;     // empty when unknown
};

/// Pulse file: {N, J, n, p, dt, amplitudes, bound?, provenance}.
struct PulseFile {
  int spins = 0;
  double coupling = 1.0;
  int excitations = 0;
  Pulse pulse;
  PulseProvenance provenance;
};

std::string pulse_to_json(const PulseFile& file);
PulseFile pulse_from_json(std::string_view text);

/// "t,B" rows at the start of every step plus the final time.
std::string pulse_to_csv(const Pulse& pulse);

/// Header "t,B,<basis labels...>,concurrence". Row m holds the state after
/// m steps and the amplitude applied on [t_m, t_m + dt); the last row repeats B_p.
std::string trajectory_csv(const Pulse& pulse, const ChainSpec& spec, const PureState& psi0);

/// "iteration,fidelity".
std::string trace_csv(const std::vector<double>& trace);

/// "parameter,mean,stderr,bound,n_samples,fidelity"; absent values are empty fields.
std::string sweep_to_csv(const SweepResult& sweep);
/// Full sweep record; `provenance` must be a JSON object text.
std::string sweep_to_json(const SweepResult& sweep, std::string_view provenance = "{}");

std::string controllability_to_json(const std::optional<LieAlgebraReport>& lie,
                                    const RegularityReport& regularity);

}  // namespace chainctl
