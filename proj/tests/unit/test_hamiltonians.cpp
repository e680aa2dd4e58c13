#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "chainctl/errors.hpp"
#include "chainctl/hamiltonians.hpp"
#include "chainctl/linalg.hpp"
#include "chainctl/metrics.hpp"
#include "oracles.hpp"

namespace {

using namespace chainctl;

std::vector<double> offsets(int spins, std::uint64_t seed, double alpha) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-alpha, alpha);
  std::vector<double> eps(static_cast<std::size_t>(spins - 1));
  for (auto& e : eps) e = u(gen);
  return eps;
}

// Every subspace operator equals the Kronecker-product operator restricted to the sector.
TEST(Hamiltonians, MatchKroneckerOracleOnEverySector) {
  for (int spins = 2; spins <= 6; ++spins) {
    ChainSpec spec = ChainSpec::uniform(spins);
    spec.bond_offsets = offsets(spins, 100 + spins, 0.3);
    spec.leakage = 0.7;
    const auto h0_full = oracle::full_h0(spins, spec.bond_offsets);
    const auto h1_full = oracle::full_h1(spins, spec.leakage);
    const auto a_full = oracle::full_singlet_projector(spins);
    for (int n = 0; n <= spins; ++n) {
      const auto idx = oracle::sector(spins, n);
      EXPECT_LT((build_h0(spec, n).matrix() - oracle::restrict(h0_full, idx)).norm(), 1e-12);
      EXPECT_LT((build_h1(spec, n).matrix() - oracle::restrict(h1_full, idx)).norm(), 1e-12);
      EXPECT_LT((build_target_observable(spins, n).matrix() - oracle::restrict(a_full, idx)).norm(), 1e-12);
    }
  }
}

TEST(Hamiltonians, TwoSpinSingleExcitation) {
  const auto h = build_h0(ChainSpec::uniform(2), 1).matrix();
  Eigen::Matrix2cd expected;
  expected << -1.0, 2.0, 2.0, -1.0;
  EXPECT_LT((h - expected).norm(), 1e-14);
  const auto s = eigh(build_h0(ChainSpec::uniform(2), 1));
  EXPECT_NEAR(s.values(0), -3.0, 1e-12);
  EXPECT_NEAR(s.values(1), 1.0, 1e-12);
}

TEST(Hamiltonians, EmptySectorOfThreeSpins) {
  const auto h = build_h0(ChainSpec::uniform(3), 0).matrix();
  ASSERT_EQ(h.rows(), 1);
  EXPECT_DOUBLE_EQ(h(0, 0).real(), 2.0);
}

TEST(Hamiltonians, FourSpinSpectrum) {
  const auto s = eigh(build_h0(ChainSpec::uniform(4), 2));
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  const std::vector<double> expected = {-2 * r3 - 3, -2 * r2 - 1, -1, 2 * r3 - 3, 2 * r2 - 1, 3};
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(s.values(static_cast<Eigen::Index>(i)), expected[i], 1e-9);
}

TEST(Hamiltonians, ControlSignConvention) {
  const auto h1 = build_h1(ChainSpec::uniform(4), 2);
  const auto& b = h1.basis();
  EXPECT_DOUBLE_EQ(h1.matrix()(static_cast<Eigen::Index>(b.rank(0b0011)), static_cast<Eigen::Index>(b.rank(0b0011))).real(), 1.0);
  EXPECT_DOUBLE_EQ(h1.matrix()(static_cast<Eigen::Index>(b.rank(0b1100)), static_cast<Eigen::Index>(b.rank(0b1100))).real(), -1.0);
  EXPECT_TRUE(h1.is_diagonal());
}

TEST(Hamiltonians, LeakageWeights) {
  ChainSpec spec = ChainSpec::uniform(4);
  spec.leakage = 1.0;
  for (int k = 1; k <= 4; ++k) EXPECT_DOUBLE_EQ(spec.field_weight(k), std::exp(-(k - 1.0)));
  spec.leakage = 0.0;
  EXPECT_DOUBLE_EQ(spec.field_weight(1), 1.0);
  EXPECT_DOUBLE_EQ(spec.field_weight(2), 0.0);
}

TEST(Hamiltonians, LongLeakageApproachesConservedMagnetisation) {
  ChainSpec spec = ChainSpec::uniform(6);
  spec.leakage = 1e9;
  const auto h1 = build_h1(spec, 2).matrix();
  const auto n = h1.rows();
  EXPECT_LT((h1 - (6.0 - 4.0) * Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-6);
  const auto h0 = build_h0(spec, 2).matrix();
  EXPECT_LT((h0 * h1 - h1 * h0).norm(), 1e-6);
}

TEST(TargetObservable, FourSpinPlusEigenspace) {
  const auto a = build_target_observable(4, 2);
  const auto& b = a.basis();
  EXPECT_NEAR(a.matrix().trace().real(), 2.0, 1e-12);
  EXPECT_LT((a.matrix() * a.matrix() - a.matrix()).norm(), 1e-12);
  const auto ket = [&](std::initializer_list<std::pair<Config, double>> terms) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(a.dim());
    for (const auto& [c, w] : terms) v(static_cast<Eigen::Index>(b.rank(c))) = w / std::sqrt(2.0);
    return v;
  };
  for (const auto& v : {ket({{0b0011, 1.0}, {0b1010, -1.0}}), ket({{0b0101, 1.0}, {0b1100, -1.0}})}) {
    EXPECT_LT((a.matrix() * v - v).norm(), 1e-12);
  }
}

TEST(TargetObservable, RankMatchesBinomialAndEigendecomposition) {
  EXPECT_EQ(plus_eigenspace_dim(4, 2), 2);
  EXPECT_EQ(plus_eigenspace_dim(4, 0), 0);
  EXPECT_EQ(plus_eigenspace_dim(2, 1), 1);
  for (const auto& [spins, n] : std::vector<std::pair<int, int>>{{6, 3}, {8, 3}, {5, 2}, {7, 4}}) {
    const auto s = eigh(build_target_observable(spins, n).matrix());
    int ones = 0;
    for (Eigen::Index i = 0; i < s.values.size(); ++i) {
      if (std::abs(s.values(i) - 1.0) < 1e-9) ++ones;
      else EXPECT_NEAR(s.values(i), 0.0, 1e-9);
    }
    EXPECT_EQ(ones, plus_eigenspace_dim(spins, n));
  }
  EXPECT_EQ(plus_eigenspace_dim(8, 3), 15);
}

TEST(GroundState, TwoSpinSinglet) {
  const auto g = ground_state(build_h0(ChainSpec::uniform(2), 1));
  EXPECT_NEAR(g.energy, -3.0, 1e-12);
  EXPECT_FALSE(g.degenerate);
  EXPECT_NEAR(std::abs(g.vector(0)), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(g.vector(0) + g.vector(1)), 0.0, 1e-12);
}

TEST(GroundState, FourSpinNonDegenerateAndIdentityDegenerate) {
  const auto g = ground_state(build_h0(ChainSpec::uniform(4), 2));
  EXPECT_NEAR(g.energy, -2 * std::sqrt(3.0) - 3, 1e-10);
  EXPECT_FALSE(g.degenerate);
  auto basis = std::make_shared<const SubspaceBasis>(4, 2);
  const HermitianOperator id(basis, Eigen::MatrixXcd::Identity(6, 6));
  EXPECT_TRUE(ground_state(id).degenerate);
}

TEST(GroundState, ChainGroundStateScalesWithCoupling) {
  const auto a = chain_ground_state(ChainSpec::uniform(6, 1.0));
  const auto b = chain_ground_state(ChainSpec::uniform(6, 2.5));
  EXPECT_EQ(a.excitations, 3);
  EXPECT_NEAR(std::abs(a.amplitudes.dot(b.amplitudes)), 1.0, 1e-10);
}

TEST(ThermalState, BlocksMatchFullSpaceGibbsState) {
  const int spins = 4;
  const double kT = 0.8;
  const ChainSpec spec = ChainSpec::uniform(spins, 1.3);
  const oracle::MatrixXcd h = 1.3 * oracle::full_h0(spins);
  oracle::MatrixXcd gibbs = (-h / kT).exp();
  gibbs /= gibbs.trace();
  const auto state = thermal_state(spec, kT);
  EXPECT_NEAR(state.total_weight(), 1.0, 1e-12);
  const auto rho = state.density();
  EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
  for (int n = 0; n <= spins; ++n) {
    const auto* block = rho.find(n);
    ASSERT_NE(block, nullptr);
    EXPECT_LT((block->rho - oracle::restrict(gibbs, oracle::sector(spins, n))).norm(), 1e-12);
  }
}

TEST(ThermalState, TemperatureLimits) {
  const auto cold = thermal_state(ChainSpec::uniform(4), 1e-3);
  const auto g = chain_ground_state(ChainSpec::uniform(4));
  const auto cold_rho = cold.density();
  const auto* block = cold_rho.find(2);
  ASSERT_NE(block, nullptr);
  EXPECT_NEAR((g.amplitudes.adjoint() * block->rho * g.amplitudes)(0).real(), 1.0, 1e-10);

  const auto hot = thermal_state(ChainSpec::uniform(4), 1e7).density();
  for (const auto& b : hot.blocks) {
    for (Eigen::Index i = 0; i < b.rho.rows(); ++i) EXPECT_NEAR(b.rho(i, i).real(), 1.0 / 16.0, 1e-6);
  }
  const auto zero = thermal_state(ChainSpec::uniform(4), 0.0);
  EXPECT_NEAR(zero.total_weight(), 1.0, 1e-14);
}

TEST(ThermalState, RejectsNegativeTemperature) {
  EXPECT_THROW(thermal_state(ChainSpec::uniform(4), -1.0), DomainError);
}

TEST(Disorder, DeterministicAndBounded) {
  EXPECT_EQ(sample_disorder(6, 0.1, 5), sample_disorder(6, 0.1, 5));
  EXPECT_NE(sample_disorder(6, 0.1, 5), sample_disorder(6, 0.1, 6));
  for (double e : sample_disorder(6, 0.0, 9)) EXPECT_EQ(e, 0.0);
  EXPECT_THROW(sample_disorder(6, 1.5, 1), DomainError);
}

TEST(Disorder, UniformMoments) {
  const double alpha = 0.5;
  double sum = 0.0, sq = 0.0;
  std::size_t count = 0;
  for (std::uint64_t s = 0; count < 100000; ++s) {
    for (double e : sample_disorder(11, alpha, s)) {
      EXPECT_LE(std::abs(e), alpha);
      sum += e;
      sq += e * e;
      ++count;
    }
  }
  const double mean = sum / static_cast<double>(count);
  const double var = sq / static_cast<double>(count) - mean * mean;
  const double sigma_mean = alpha / std::sqrt(3.0 * static_cast<double>(count));
  EXPECT_LT(std::abs(mean), 3.0 * sigma_mean);
  EXPECT_NEAR(var, alpha * alpha / 3.0, 0.05 * alpha * alpha / 3.0);
}

TEST(ChainSpec, Validation) {
  EXPECT_THROW(ChainSpec::uniform(1).validate(), DomainError);
  ChainSpec s = ChainSpec::uniform(4);
  s.coupling = 0.0;
  EXPECT_THROW(s.validate(), DomainError);
  s = ChainSpec::uniform(4);
  s.bond_offsets = {0.1, 0.2};
  EXPECT_THROW(s.validate(), DomainError);
  s.bond_offsets = {0.1, 0.2, 0.3};
  EXPECT_NO_THROW(s.validate());
  s.leakage = -1.0;
  EXPECT_THROW(s.validate(), DomainError);
  EXPECT_THROW(build_h0(ChainSpec::uniform(4), 5), DomainError);
}

}  // namespace
