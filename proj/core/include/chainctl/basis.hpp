#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace chainctl {

/// Computational basis configuration of a chain. Spin 1 is the most
/// significant of the N low bits; a set bit is an excitation |1>.
using Config = std::uint32_t;

inline constexpr int kMaxSpins = 24;

/// Binomial coefficient C(n, k) for 0 <= n <= 64; zero outside 0 <= k <= n.
std::uint64_t binomial(int n, int k);

/// Bit position holding spin `site` (1-based) of an N-spin configuration.
constexpr int spin_bit(int spins, int site) { return spins - site; }

constexpr bool spin_excited(Config config, int spins, int site) {
  return ((config >> spin_bit(spins, site)) & 1U) != 0;
}

/// Fixed-excitation subspace H_n of an N-spin chain.
///
/// Configurations are listed in increasing numeric order, which is
/// lexicographic order of the bit string read from spin 1 to spin N.
/// Immutable after construction.
class SubspaceBasis {
 public:
  SubspaceBasis(int spins, int excitations);

  int spins() const { return spins_; }
  int excitations() const { return excitations_; }
  std::size_t dim() const { return configs_.size(); }
  std::span<const Config> configs() const { return configs_; }

  Config unrank(std::size_t index) const;
  /// Combinatorial-number-system index of `config`; O(N).
  std::size_t rank(Config config) const;

  /// Bit string from spin 1 to spin N, e.g. "0011".
  std::string label(std::size_t index) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.spins_ == b.spins_ && a.excitations_ == b.excitations_;
  }

 private:
  int spins_;
  int excitations_;
  std::vector<Config> configs_;
};

SubspaceBasis enumerate_basis(int spins, int excitations);

std::string config_label(Config config, int spins);

/// Value of the end pair (spin 1, spin N) packed as 2*s1 + sN.
enum class EndPair : int { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

struct EndPairEntry {
  std::size_t index;  // position in the subspace basis
  Config interior;    // spins 2..N-1 packed into N-2 bits, spin 2 most significant
};

/// Basis indices grouped by the state of the two end spins. Within each group
/// entries are ordered by increasing interior configuration, so the 01 and 10
/// groups pair up position by position.
struct EndPairPartition {
  int spins = 0;
  int excitations = 0;
  std::array<std::vector<EndPairEntry>, 4> groups;

  const std::vector<EndPairEntry>& operator[](EndPair pair) const {
    return groups[static_cast<int>(pair)];
  }
};

EndPairPartition end_pair_partition(const SubspaceBasis& basis);

}  // namespace chainctl
