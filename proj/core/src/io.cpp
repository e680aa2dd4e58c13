#include "chainctl/io.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chainctl/errors.hpp"
#include "chainctl/metrics.hpp"
#include "chainctl/propagation.hpp"

namespace chainctl {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string operator_to_json(const HermitianOperator& op) {
  json entries = json::array();
  const auto& m = op.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  }
  const json j = {{"dim", op.dim()},
                  {"basis", {{"N", op.basis().spins()}, {"n", op.basis().excitations()}}},
                  {"entries", std::move(entries)}};
  return j.dump(1) + "\n";
}

HermitianOperator operator_from_json(std::string_view text) {
  const json j = parse(text);
  const auto dim = field<Eigen::Index>(j, "dim");
  const json basis = field<json>(j, "basis");
  const int n_spins = field<int>(basis, "N");
  const int n_exc = field<int>(basis, "n");
  auto b = std::make_shared<const SubspaceBasis>(n_spins, n_exc);
  if (static_cast<Eigen::Index>(b->dim()) != dim) {
    throw FormatError("operator 'dim' does not match C(N, n)");
  }
  const auto entries = field<std::vector<std::array<double, 2>>>(j, "entries");
  if (static_cast<Eigen::Index>(entries.size()) != dim * dim) {
    throw FormatError("operator needs dim*dim entries");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto& e = entries[static_cast<std::size_t>(r * dim + c)];
      m(r, c) = {e[0], e[1]};
    }
  }
  return HermitianOperator(std::move(b), std::move(m), 1e-10);
}

std::string pulse_to_json(const PulseFile& file) {
  json prov = {{"seed", file.provenance.seed},
               {"options", parse(file.provenance.options)},
               {"fidelity", file.provenance.fidelity},
               {"version", kArtifactVersion}};
  if (!file.provenance.config_hash.empty()) prov["config_hash"] = file.provenance.config_hash;
  json j = {{"N", file.spins},
            {"J", file.coupling},
            {"n", file.excitations},
            {"p", file.pulse.steps()},
            {"dt", file.pulse.dt},
            {"amplitudes", file.pulse.amplitudes}};
  if (file.pulse.bound) j["bound"] = *file.pulse.bound;
  j["provenance"] = std::move(prov);
  return j.dump(1) + "\n";
}

PulseFile pulse_from_json(std::string_view text) {
  const json j = parse(text);
  PulseFile f;
  f.spins = field<int>(j, "N");
  f.coupling = field<double>(j, "J");
  f.excitations = field<int>(j, "n");
  f.pulse.dt = field<double>(j, "dt");
  f.pulse.amplitudes = field<std::vector<double>>(j, "amplitudes");
  if (j.contains("bound") && !j["bound"].is_null()) f.pulse.bound = field<double>(j, "bound");
  const auto p = field<std::size_t>(j, "p");
  if (p != f.pulse.amplitudes.size()) throw FormatError("'p' does not match the number of amplitudes");
  if (p == 0) throw FormatError("pulse has no steps");
  try {
    f.pulse.validate();
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  if (j.contains("provenance")) {
    const json& prov = j["provenance"];
    if (prov.contains("seed")) f.provenance.seed = field<std::uint64_t>(prov, "seed");
    if (prov.contains("options")) f.provenance.options = prov["options"].dump();
    if (prov.contains("fidelity")) f.provenance.fidelity = field<double>(prov, "fidelity");
    if (prov.contains("config_hash")) f.provenance.config_hash = field<std::string>(prov, "config_hash");
  }
  return f;
}

std::string pulse_to_csv(const Pulse& pulse) {
  std::ostringstream os;
  os << "t,B\n";
  for (std::size_t m = 0; m <= pulse.steps(); ++m) {
    const double b = pulse.amplitudes[std::min(m, pulse.steps() - 1)];
    os << fmt(static_cast<double>(m) * pulse.dt) << ',' << fmt(b) << '\n';
  }
  return os.str();
}

std::string trajectory_csv(const Pulse& pulse, const ChainSpec& spec, const PureState& psi0) {
  if (pulse.amplitudes.empty()) throw DomainError("pulse has no steps");
  const PureEvolution ev = evolve_pure(pulse, psi0.amplitudes, build_h0(spec, psi0.excitations),
                                       build_h1(spec, psi0.excitations), spec.coupling, true);
  const SubspaceBasis basis(psi0.spins, psi0.excitations);
  const EndPairPartition part = end_pair_partition(basis);
  std::ostringstream os;
  os << "t,B";
  for (std::size_t i = 0; i < basis.dim(); ++i) os << ',' << basis.label(i);
  os << ",concurrence\n";
  for (std::size_t m = 0; m < ev.trajectory.size(); ++m) {
    const auto& psi = ev.trajectory[m];
    os << fmt(static_cast<double>(m) * pulse.dt) << ','
       << fmt(pulse.amplitudes[std::min(m, pulse.steps() - 1)]);
    for (Eigen::Index i = 0; i < psi.size(); ++i) os << ',' << fmt(std::norm(psi(i)));
    os << ',' << fmt(concurrence(reduced_end_density(psi, part))) << '\n';
  }
  return os.str();
}

std::string trace_csv(const std::vector<double>& trace) {
  std::ostringstream os;
  os << "iteration,fidelity\n";
  for (std::size_t i = 0; i < trace.size(); ++i) os << i << ',' << fmt(trace[i]) << '\n';
  return os.str();
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "parameter,mean,stderr,bound,n_samples,fidelity\n";
  for (const auto& p : sweep.points) {
    os << fmt(p.parameter) << ',' << fmt(p.concurrence) << ',' << fmt(p.stderr_mean) << ',';
    if (p.bound) os << fmt(*p.bound);
    os << ',' << p.samples << ',';
    if (p.fidelity) os << fmt(*p.fidelity);
    os << '\n';
  }
  return os.str();
}

std::string sweep_to_json(const SweepResult& sweep, std::string_view provenance) {
  json points = json::array();
  for (const auto& p : sweep.points) {
    json e = {{"parameter", p.parameter},
              {"concurrence", p.concurrence},
              {"stddev", p.stddev},
              {"stderr", p.stderr_mean},
              {"n_samples", p.samples}};
    e["fidelity"] = p.fidelity ? json(*p.fidelity) : json(nullptr);
    e["bound"] = p.bound ? json(*p.bound) : json(nullptr);
    if (sweep.kind == SweepKind::Disorder) {
      e["excluded"] = p.excluded;
      e["samples"] = p.sample_concurrence;
    }
    if (sweep.kind == SweepKind::Dephasing) e["lindblad_substeps"] = p.lindblad_substeps;
    points.push_back(std::move(e));
  }
  json j = {{"kind", to_string(sweep.kind)},
            {"N", sweep.spins},
            {"reoptimized", sweep.reoptimized},
            {"points", std::move(points)},
            {"provenance", parse(provenance)}};
  if (sweep.seed) j["seed"] = *sweep.seed;
  if (!sweep.model.empty()) j["model"] = sweep.model;
  return j.dump(1) + "\n";
}

std::string controllability_to_json(const std::optional<LieAlgebraReport>& lie,
                                    const RegularityReport& reg) {
  json j;
  if (lie) {
    j["lie_algebra"] = {{"subspace_dim", lie->subspace_dim},
                        {"dimension", lie->dimension},
                        {"full", lie->full()},
                        {"full_up_to_phase", lie->full_up_to_phase()},
                        {"closed", lie->closed},
                        {"cap_reached", lie->cap_reached},
                        {"cap", lie->cap},
                        {"tol", lie->tol},
                        {"growth", lie->growth}};
  } else {
    j["lie_algebra"] = nullptr;
  }
  json abs_b = json::array();
  for (Eigen::Index r = 0; r < reg.control.rows(); ++r) {
    std::vector<double> row;
    for (Eigen::Index c = 0; c < reg.control.cols(); ++c) row.push_back(std::abs(reg.control(r, c)));
    abs_b.push_back(std::move(row));
  }
  const char* witness = "none";
  switch (reg.witness) {
    case RegularityWitnessKind::None:
      break;
    case RegularityWitnessKind::ZeroFrequency:
      witness = "zero_frequency";
      break;
    case RegularityWitnessKind::FrequencyClash:
      witness = "frequency_clash";
      break;
    case RegularityWitnessKind::Disconnected:
      witness = "disconnected";
      break;
  }
  json clashing = json::array();
  for (const auto& [a, b] : reg.clashing_edges) clashing.push_back({a, b});
  json edges = json::array();
  for (const auto& [a, b] : reg.edges) edges.push_back({a, b});
  j["regularity"] = {
      {"eigenvalues", std::vector<double>(reg.eigenvalues.data(),
                                          reg.eigenvalues.data() + reg.eigenvalues.size())},
      {"abs_control", std::move(abs_b)},
      {"edges", std::move(edges)},
      {"effectively_strongly_regular", reg.effectively_strongly_regular},
      {"connected", reg.connected},
      {"controllable_by_criterion", reg.controllable_by_criterion},
      {"witness", {{"kind", witness}, {"edges", std::move(clashing)}, {"component", reg.component}}}};
  return j.dump(1) + "\n";
}

}  // namespace chainctl
