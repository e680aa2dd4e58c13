#include "chainctl/controllability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "chainctl/errors.hpp"
#include "chainctl/linalg.hpp"

namespace chainctl {
namespace {

using cplx = std::complex<double>;

// Orthonormal basis of a real subspace of skew-Hermitian matrices, stored as
// flattened complex columns with inner product Re tr(A^dagger B).
class RealSpan {
 public:
  RealSpan(Eigen::Index m, std::size_t cap) : m_(m) {
    basis_.reserve(cap);
  }

  std::size_t size() const { return basis_.size(); }

  /// Adds `x` when its residual against the span exceeds tol * max(|x|, 1);
  /// returns the new element. Inputs are built from unit-norm matrices, so
  /// the floor of 1 keeps round-off commutators out.
  std::optional<Eigen::MatrixXcd> insert(const Eigen::MatrixXcd& x, double tol) {
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
    const double norm = v.norm();
    if (norm == 0.0) return std::nullopt;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis_) v -= q.dot(v).real() * q;
    }
    const double residual = v.norm();
    if (residual <= tol * std::max(norm, 1.0)) return std::nullopt;
    v /= residual;
    basis_.push_back(v);
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), m_, m_);
  }

 private:
  Eigen::Index m_;
  std::vector<Eigen::VectorXcd> basis_;
};

}  // namespace

LieAlgebraReport dynamical_lie_dimension(const HermitianOperator& h0, const HermitianOperator& h1,
                                         double tol, std::size_t cap) {
  require_same_basis(h0, h1);
  if (!(tol > 0.0)) throw DomainError("independence tolerance must be positive");
  const Eigen::Index m = h0.dim();
  const auto full = static_cast<std::size_t>(m * m);
  LieAlgebraReport report;
  report.subspace_dim = static_cast<std::size_t>(m);
  report.cap = cap == 0 ? full : std::min(cap, full);
  report.tol = tol;

  const cplx mi(0.0, -1.0);
  std::array<Eigen::MatrixXcd, 2> gens{mi * h0.matrix(), mi * h1.matrix()};
  for (auto& g : gens) {
    if (const double n = g.norm(); n > 0.0) g /= n;
  }
  RealSpan span(m, report.cap);
  std::vector<Eigen::MatrixXcd> frontier;
  for (const auto& g : gens) {
    if (span.size() >= report.cap) break;
    if (auto q = span.insert(g, tol)) frontier.push_back(std::move(*q));
  }
  report.growth.push_back(span.size());

  while (!frontier.empty() && span.size() < report.cap) {
    std::vector<Eigen::MatrixXcd> added;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        if (span.size() >= report.cap) break;
        const Eigen::MatrixXcd c = g * x - x * g;
        if (auto q = span.insert(c, tol)) added.push_back(std::move(*q));
      }
    }
    frontier = std::move(added);
    report.growth.push_back(span.size());
  }
  report.dimension = span.size();
  report.closed = frontier.empty() || report.dimension == full;
  report.cap_reached = !report.closed;
  return report;
}

RegularityReport strongly_regular_connected_check(const HermitianOperator& h0,
                                                  const HermitianOperator& h1, double tol) {
  require_same_basis(h0, h1);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  RegularityReport report;
  const Spectrum spec = eigh(h0);
  report.eigenvalues = spec.values;
  report.control = spec.vectors.adjoint() * h1.matrix() * spec.vectors;

  const auto m = static_cast<std::size_t>(spec.values.size());
  const double bmax = report.control.cwiseAbs().maxCoeff();
  const double edge_tol = tol * std::max(bmax, 1e-300);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      if (std::abs(report.control(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k))) >
          edge_tol) {
        report.edges.emplace_back(j, k);
      }
    }
  }

  const double range = m > 0 ? spec.values.maxCoeff() - spec.values.minCoeff() : 0.0;
  const double freq_tol = tol * (range > 0.0 ? range : 1.0);
  struct Transition {
    double omega;
    std::size_t edge;
  };
  std::vector<Transition> omegas;
  bool regular = true;
  for (std::size_t e = 0; e < report.edges.size(); ++e) {
    const auto [j, k] = report.edges[e];
    const double w = spec.values(static_cast<Eigen::Index>(k)) - spec.values(static_cast<Eigen::Index>(j));
    if (std::abs(w) <= freq_tol) {
      regular = false;
      report.witness = RegularityWitnessKind::ZeroFrequency;
      report.clashing_edges = {report.edges[e]};
      break;
    }
    omegas.push_back({w, e});
  }
  if (regular) {
    std::sort(omegas.begin(), omegas.end(),
              [](const Transition& a, const Transition& b) { return a.omega < b.omega; });
    for (std::size_t i = 1; i < omegas.size(); ++i) {
      if (omegas[i].omega - omegas[i - 1].omega <= freq_tol) {
        regular = false;
        report.witness = RegularityWitnessKind::FrequencyClash;
        report.clashing_edges = {report.edges[omegas[i - 1].edge], report.edges[omegas[i].edge]};
        break;
      }
    }
  }
  report.effectively_strongly_regular = regular;

  std::vector<std::vector<std::size_t>> adj(m);
  for (const auto& [j, k] : report.edges) {
    adj[j].push_back(k);
    adj[k].push_back(j);
  }
  std::vector<bool> seen(m, false);
  std::vector<std::size_t> component;
  if (m > 0) {
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    while (!todo.empty()) {
      const std::size_t v = todo.front();
      todo.pop();
      component.push_back(v);
      for (const std::size_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          todo.push(w);
        }
      }
    }
  }
  report.connected = component.size() == m;
  if (!report.connected) {
    std::sort(component.begin(), component.end());
    report.component = std::move(component);
    if (report.witness == RegularityWitnessKind::None) {
      report.witness = RegularityWitnessKind::Disconnected;
    }
  }
  report.controllable_by_criterion = report.effectively_strongly_regular && report.connected;
  return report;
}

}  // namespace chainctl
