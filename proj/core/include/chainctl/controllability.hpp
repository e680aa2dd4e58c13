#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chainctl/operator.hpp"

namespace chainctl {

struct LieAlgebraReport {
  std::size_t subspace_dim = 0;  // M
  std::size_t dimension = 0;
  bool closed = false;      // a closure round added nothing or u(M) was reached
  bool cap_reached = false;  // stopped at the cap before closing
  std::size_t cap = 0;
  std::vector<std::size_t> growth;  // dimension after each closure round
  double tol = 0.0;

  /// dimension == M^2, i.e. the algebra is u(M).
  bool full() const { return dimension == subspace_dim * subspace_dim; }
  /// dimension >= M^2 - 1: su(M) or u(M).
  bool full_up_to_phase() const { return dimension + 1 >= subspace_dim * subspace_dim; }
};

/// Dimension of the real Lie algebra generated by -i h0 and -i h1.
/// Both generators are scaled to unit Frobenius norm and closure elements are
/// orthonormalised; a candidate is kept when its residual exceeds
/// `tol` * max(norm, 1). `cap` = 0 means M^2.
LieAlgebraReport dynamical_lie_dimension(const HermitianOperator& h0, const HermitianOperator& h1,
                                         double tol = 1e-9, std::size_t cap = 0);

enum class RegularityWitnessKind {
  None,
  ZeroFrequency,    // an edge between (numerically) degenerate levels
  FrequencyClash,   // two edges with the same transition frequency
  Disconnected,     // control graph has more than one component
};

struct RegularityReport {
  Eigen::VectorXd eigenvalues;      // of h0, ascending
  Eigen::MatrixXcd control;         // h1 in the h0 eigenbasis
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // j < k with |b_jk| above threshold
  bool effectively_strongly_regular = false;
  bool connected = false;
  bool controllable_by_criterion = false;

  RegularityWitnessKind witness = RegularityWitnessKind::None;
  std::vector<std::pair<std::size_t, std::size_t>> clashing_edges;  // one or two edges
  std::vector<std::size_t> component;  // indices reachable from level 0 when disconnected
};

/// Sufficient controllability test on the subspace: all transition
/// frequencies e_k - e_j over edges are nonzero and pairwise distinct within
/// tol * (spectral range), and the edge graph is connected. Edges are the
/// pairs with |b_jk| > tol * max |b|.
RegularityReport strongly_regular_connected_check(const HermitianOperator& h0,
                                                  const HermitianOperator& h1, double tol = 1e-8);

}  // namespace chainctl
