#include "chainctl/basis.hpp"

#include <bit>
#include <string>

#include "chainctl/errors.hpp"

namespace chainctl {
namespace {

constexpr int kBinomialRows = 65;

struct BinomialTable {
  std::array<std::array<std::uint64_t, kBinomialRows>, kBinomialRows> value{};

  constexpr BinomialTable() {
    for (int n = 0; n < kBinomialRows; ++n) {
      value[n][0] = 1;
      for (int k = 1; k <= n; ++k) {
        value[n][k] = value[n - 1][k - 1] + (k < n ? value[n - 1][k] : 0);
      }
    }
  }
};

constexpr BinomialTable kBinomials{};

// Next larger integer with the same population count.
constexpr Config next_same_popcount(Config v) {
  const Config t = v | (v - 1);
  return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n >= kBinomialRows || k < 0 || k > n) return 0;
  return kBinomials.value[n][k];
}

SubspaceBasis::SubspaceBasis(int spins, int excitations)
    : spins_(spins), excitations_(excitations) {
  if (spins < 2 || spins > kMaxSpins) {
    throw DomainError("spin count must lie in [2, " + std::to_string(kMaxSpins) +
                      "], got " + std::to_string(spins));
  }
  if (excitations < 0 || excitations > spins) {
    throw DomainError("excitation count " + std::to_string(excitations) +
                      " outside [0, " + std::to_string(spins) + "]");
  }
  const auto count = binomial(spins, excitations);
  configs_.reserve(count);
  if (excitations == 0) {
    configs_.push_back(0);
    return;
  }
  Config c = (Config{1} << excitations) - 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    configs_.push_back(c);
    if (i + 1 < count) c = next_same_popcount(c);
  }
}

Config SubspaceBasis::unrank(std::size_t index) const {
  if (index >= configs_.size()) {
    throw DomainError("basis index " + std::to_string(index) + " out of range");
  }
  return configs_[index];
}

std::size_t SubspaceBasis::rank(Config config) const {
  if (std::popcount(config) != excitations_ || (config >> spins_) != 0) {
    throw DomainError("configuration " + config_label(config, spins_) + " is not in H_" +
                      std::to_string(excitations_));
  }
  // Combinadic: the i-th set bit (from the least significant) at position p
  // contributes C(p, i + 1).
  std::size_t index = 0;
  int i = 0;
  for (Config rest = config; rest != 0; rest &= rest - 1, ++i) {
    index += binomial(std::countr_zero(rest), i + 1);
  }
  return index;
}

std::string SubspaceBasis::label(std::size_t index) const {
  return config_label(unrank(index), spins_);
}

std::string config_label(Config config, int spins) {
  std::string out(static_cast<std::size_t>(spins), '0');
  for (int site = 1; site <= spins; ++site) {
    if (spin_excited(config, spins, site)) out[site - 1] = '1';
  }
  return out;
}

SubspaceBasis enumerate_basis(int spins, int excitations) {
  return SubspaceBasis(spins, excitations);
}

EndPairPartition end_pair_partition(const SubspaceBasis& basis) {
  const int n = basis.spins();
  EndPairPartition out;
  out.spins = n;
  out.excitations = basis.excitations();
  const Config interior_mask = (Config{1} << (n - 2)) - 1;
  const auto configs = basis.configs();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const Config c = configs[i];
    const int first = spin_excited(c, n, 1) ? 1 : 0;
    const int last = spin_excited(c, n, n) ? 1 : 0;
    out.groups[2 * first + last].push_back({i, (c >> 1) & interior_mask});
  }
  return out;
}

}  // namespace chainctl
