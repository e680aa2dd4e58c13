#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "chainctl/controllability.hpp"
#include "chainctl/errors.hpp"
#include "chainctl/hamiltonians.hpp"
#include "oracles.hpp"

namespace {

using namespace chainctl;

HermitianOperator on_subspace(int spins, int n, const Eigen::MatrixXcd& m) {
  return HermitianOperator(std::make_shared<const SubspaceBasis>(spins, n), m);
}

// Independent closure: repeatedly commute every pair of spanning elements,
// rank measured by SVD of the vectorised real coordinates.
std::size_t closure_by_svd(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
  const auto d = a.rows();
  std::vector<Eigen::MatrixXcd> span = {Eigen::MatrixXcd(std::complex<double>(0, -1) * a),
                                        Eigen::MatrixXcd(std::complex<double>(0, -1) * b)};
  const auto rank_of = [&](const std::vector<Eigen::MatrixXcd>& ms) {
    Eigen::MatrixXd cols(2 * d * d, static_cast<Eigen::Index>(ms.size()));
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto c = static_cast<Eigen::Index>(i);
      cols.col(c).head(d * d) = Eigen::Map<const Eigen::MatrixXcd>(ms[i].data(), d * d, 1).real();
      cols.col(c).tail(d * d) = Eigen::Map<const Eigen::MatrixXcd>(ms[i].data(), d * d, 1).imag();
      cols.col(c).normalize();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols);
    svd.setThreshold(tol);
    return static_cast<std::size_t>(svd.rank());
  };
  std::size_t rank = rank_of(span);
  while (true) {
    std::vector<Eigen::MatrixXcd> next = span;
    for (std::size_t i = 0; i < span.size(); ++i) {
      for (std::size_t j = i + 1; j < span.size(); ++j) {
        std::vector<Eigen::MatrixXcd> trial = next;
        trial.push_back(span[i] * span[j] - span[j] * span[i]);
        if (rank_of(trial) > rank_of(next)) next = std::move(trial);
      }
    }
    const std::size_t r = rank_of(next);
    if (r == rank) return r;
    rank = r;
    span = std::move(next);
  }
}

TEST(LieAlgebra, SingleGeneratorIsAbelian) {
  const auto h0 = build_h0(ChainSpec::uniform(4), 2);
  const auto r = dynamical_lie_dimension(h0, h0);
  EXPECT_EQ(r.dimension, 1U);
  EXPECT_TRUE(r.closed);
}

TEST(LieAlgebra, FiveSpinTwoExcitationsIsFull) {
  const ChainSpec spec = ChainSpec::uniform(5);
  const auto r = dynamical_lie_dimension(build_h0(spec, 2), build_h1(spec, 2));
  EXPECT_EQ(r.subspace_dim, 10U);
  EXPECT_EQ(r.dimension, 100U);
  EXPECT_TRUE(r.full());
  EXPECT_FALSE(r.cap_reached);
  EXPECT_FALSE(r.growth.empty());
}

TEST(LieAlgebra, RandomGeneratorsAgreeWithIndependentClosure) {
  std::mt19937_64 gen(41);
  for (int t = 0; t < 5; ++t) {
    const auto a = oracle::random_hermitian(3, gen), b = oracle::random_hermitian(3, gen);
    const auto h0 = on_subspace(3, 1, a), h1 = on_subspace(3, 1, b);
    const auto r = dynamical_lie_dimension(h0, h1, 1e-9);
    EXPECT_EQ(r.dimension, 9U);
    EXPECT_EQ(dynamical_lie_dimension(h0, h1, 1e-10).dimension, 9U);
    EXPECT_EQ(closure_by_svd(a, b, 1e-10), 9U);
  }
}

TEST(LieAlgebra, TracelessGeneratorsStayInSu) {
  std::mt19937_64 gen(42);
  Eigen::MatrixXcd a = oracle::random_hermitian(4, gen), b = oracle::random_hermitian(4, gen);
  a -= a.trace() / 4.0 * Eigen::MatrixXcd::Identity(4, 4);
  b -= b.trace() / 4.0 * Eigen::MatrixXcd::Identity(4, 4);
  const auto r = dynamical_lie_dimension(on_subspace(4, 1, a), on_subspace(4, 1, b));
  EXPECT_EQ(r.dimension, 15U);
  EXPECT_FALSE(r.full());
  EXPECT_TRUE(r.full_up_to_phase());
  EXPECT_EQ(closure_by_svd(a, b, 1e-10), 15U);
}

TEST(LieAlgebra, CommutingGeneratorsAndCap) {
  const Eigen::MatrixXcd a = Eigen::VectorXcd::LinSpaced(6, 0.0, 5.0).asDiagonal();
  const Eigen::MatrixXcd b = Eigen::VectorXcd::LinSpaced(6, 1.0, 2.0).cwiseAbs2().asDiagonal();
  EXPECT_EQ(dynamical_lie_dimension(on_subspace(4, 2, a), on_subspace(4, 2, b)).dimension, 2U);
  const ChainSpec spec = ChainSpec::uniform(5);
  const auto capped = dynamical_lie_dimension(build_h0(spec, 2), build_h1(spec, 2), 1e-9, 20);
  EXPECT_TRUE(capped.cap_reached);
  EXPECT_GE(capped.dimension, 20U);
}

TEST(Regularity, FourSpinExampleMatchesPrintedMatrices) {
  const ChainSpec spec = ChainSpec::uniform(4);
  const auto r = strongly_regular_connected_check(build_h0(spec, 2), build_h1(spec, 2));
  EXPECT_TRUE(r.effectively_strongly_regular);
  EXPECT_TRUE(r.connected);
  EXPECT_TRUE(r.controllable_by_criterion);
  EXPECT_EQ(r.witness, RegularityWitnessKind::None);
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  const std::vector<double> e = {-2 * s3 - 3, -2 * s2 - 1, -1, 2 * s3 - 3, 2 * s2 - 1, 3};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(r.eigenvalues(i), e[static_cast<std::size_t>(i)], 1e-9);
  Eigen::MatrixXd printed(6, 6);
  printed << 0, 0.81, 0.58, 0, 0.11, 0,
      0.81, 0, 0, 0.50, 0, 0.31,
      0.58, 0, 0, 0.58, 0, 0.58,
      0, 0.50, 0.58, 0, 0.65, 0,
      0.11, 0, 0, 0.65, 0, 0.75,
      0, 0.31, 0.58, 0, 0.75, 0;
  // Eigenvalues are simple and sorted alike, so only eigenvector signs are free.
  EXPECT_LT((r.control.cwiseAbs() - printed).cwiseAbs().maxCoeff(), 5e-3);
}

TEST(Regularity, OddChainIsNotEffectivelyStronglyRegular) {
  const ChainSpec spec = ChainSpec::uniform(5);
  const auto r = strongly_regular_connected_check(build_h0(spec, 2), build_h1(spec, 2));
  EXPECT_FALSE(r.effectively_strongly_regular);
  EXPECT_FALSE(r.controllable_by_criterion);
  EXPECT_NE(r.witness, RegularityWitnessKind::None);
  EXPECT_FALSE(r.clashing_edges.empty());
}

TEST(Regularity, DiagonalControlHasNoEdges) {
  const ChainSpec spec = ChainSpec::uniform(4);
  const auto h0 = build_h0(spec, 2);
  const auto r = strongly_regular_connected_check(h0, h0);
  EXPECT_TRUE(r.edges.empty());
  EXPECT_FALSE(r.connected);
  EXPECT_EQ(r.witness, RegularityWitnessKind::Disconnected);
}

TEST(Regularity, IdentityDriftHasOnlyZeroFrequencies) {
  const ChainSpec spec = ChainSpec::uniform(4);
  const auto id = on_subspace(4, 2, Eigen::MatrixXcd::Identity(6, 6));
  const auto r = strongly_regular_connected_check(id, build_h0(spec, 2));
  EXPECT_FALSE(r.edges.empty());
  EXPECT_FALSE(r.effectively_strongly_regular);
  EXPECT_EQ(r.witness, RegularityWitnessKind::ZeroFrequency);
}

TEST(Regularity, EvenChainsSatisfyCriterion) {
  for (int spins : {4, 6, 8}) {
    const ChainSpec spec = ChainSpec::uniform(spins);
    const int n = spins / 2;
    const auto r = strongly_regular_connected_check(build_h0(spec, n), build_h1(spec, n));
    EXPECT_TRUE(r.controllable_by_criterion) << spins;
  }
}

// Whenever the sufficient criterion holds the closure must be all of u(M).
TEST(Regularity, CriterionImpliesFullLieAlgebra) {
  std::mt19937_64 gen(43);
  int confirmed = 0;
  for (int spins = 2; spins <= 6; ++spins) {
    for (int n = 1; n < spins; ++n) {
      if (binomial(spins, n) > 15) continue;
      for (double xi : {0.0, 0.5}) {
        ChainSpec spec = ChainSpec::uniform(spins);
        spec.leakage = xi;
        const auto h0 = build_h0(spec, n), h1 = build_h1(spec, n);
        if (!strongly_regular_connected_check(h0, h1).controllable_by_criterion) continue;
        EXPECT_TRUE(dynamical_lie_dimension(h0, h1).full()) << spins << " " << n;
        ++confirmed;
      }
    }
  }
  for (int t = 0; t < 10; ++t) {
    const auto a = on_subspace(6, 1, oracle::random_hermitian(6, gen));
    const auto b = on_subspace(6, 1, oracle::random_hermitian(6, gen));
    ASSERT_TRUE(strongly_regular_connected_check(a, b).controllable_by_criterion);
    EXPECT_TRUE(dynamical_lie_dimension(a, b).full());
    ++confirmed;
  }
  EXPECT_GE(confirmed, 12);
}

TEST(Controllability, RejectsOperatorsOnDifferentSubspaces) {
  const ChainSpec spec = ChainSpec::uniform(4);
  EXPECT_THROW(dynamical_lie_dimension(build_h0(spec, 2), build_h1(spec, 1)), DimensionMismatch);
  EXPECT_THROW(strongly_regular_connected_check(build_h0(spec, 2), build_h1(spec, 1)), DimensionMismatch);
}

}  // namespace
