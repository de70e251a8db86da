#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace bosent {

inline constexpr std::size_t kDefaultDimensionCap = 10000;

/// Split of M modes into the first m and the remaining M - m, carrying a
/// fixed number N of bosons.
class Bipartition {
 public:
  /// Throws ValidationError unless N >= 1, M >= 2 and 1 <= m <= M - 1.
  Bipartition(int particles, int modes, int first_modes);

  int particles() const { return particles_; }
  int modes() const { return modes_; }
  int first_modes() const { return first_modes_; }
  int second_modes() const { return modes_ - first_modes_; }
  bool is_two_mode() const { return modes_ == 2; }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int particles_;
  int modes_;
  int first_modes_;
};

using Occupation = std::vector<int>;

/// C(n, k) in 64-bit; throws ValidationError on overflow.
std::uint64_t binomial(int n, int k);

/// Number of N-particle Fock states on M modes, C(N + M - 1, N).
/// Throws ValidationError if it exceeds `cap`.
std::size_t total_dim(int particles, int modes, std::size_t cap = kDefaultDimensionCap);

/// All length-`parts` occupation vectors summing to `total`, lexicographically
/// descending (first mode most occupied first).
std::vector<Occupation> compositions_descending(int total, int parts);

/// Fixed-k sector: k bosons in the first m modes, N - k in the rest.
struct Sector {
  int k = 0;
  std::vector<Occupation> first;   // index sigma - 1
  std::vector<Occupation> second;  // index sigma' - 1
  std::size_t offset = 0;          // start in the flat ordering
  std::size_t offset_first = 0;    // row offset in the A (x) B embedding
  std::size_t offset_second = 0;   // column offset in the A (x) B embedding

  std::size_t dim_first() const { return first.size(); }
  std::size_t dim_second() const { return second.size(); }
  std::size_t dim() const { return first.size() * second.size(); }
};

/// Sector-resolved label of a flat basis index. sigma and sigma_prime are
/// 1-based positions in the sector's occupation lists.
struct BasisLabel {
  int k = 0;
  int sigma = 1;
  int sigma_prime = 1;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Cell of the embedding of the N-particle sector into A (x) B, where
/// A = sum_k C^{D_k} and B = sum_k C^{D_{N-k}}.
struct EmbeddedIndex {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const EmbeddedIndex&, const EmbeddedIndex&) = default;
};

/// Enumerated N-particle Fock basis for one bipartition. Flat ordering is
/// k ascending, then sigma, then sigma'. Immutable once built.
class BasisTable {
 public:
  static BasisTable enumerate(const Bipartition& bp, std::size_t cap = kDefaultDimensionCap);

  const Bipartition& bipartition() const { return bp_; }
  int particles() const { return bp_.particles(); }
  int modes() const { return bp_.modes(); }
  int first_modes() const { return bp_.first_modes(); }
  bool is_two_mode() const { return bp_.is_two_mode(); }

  std::size_t dim() const { return dim_; }
  std::size_t dim_first() const { return dim_first_; }    // A_dim
  std::size_t dim_second() const { return dim_second_; }  // B_dim

  const std::vector<Sector>& sectors() const { return sectors_; }
  const Sector& sector(int k) const;

  std::size_t flat_index(int k, int sigma, int sigma_prime) const;
  std::size_t flat_index(const BasisLabel& l) const { return flat_index(l.k, l.sigma, l.sigma_prime); }
  BasisLabel label(std::size_t flat) const;

  /// Throws ValidationError on out-of-range labels.
  EmbeddedIndex embed_index(int k, int sigma, int sigma_prime) const;
  EmbeddedIndex embed_index(std::size_t flat) const { return embedded_[flat]; }

  /// Full M-mode occupation vector of a flat basis index.
  Occupation occupation(std::size_t flat) const;
  std::optional<std::size_t> index_of(const Occupation& full) const;

 private:
  explicit BasisTable(Bipartition bp) : bp_(bp) {}

  Bipartition bp_;
  std::vector<Sector> sectors_;
  std::vector<BasisLabel> labels_;
  std::vector<EmbeddedIndex> embedded_;
  std::size_t dim_ = 0;
  std::size_t dim_first_ = 0;
  std::size_t dim_second_ = 0;
};

using BasisPtr = std::shared_ptr<const BasisTable>;

BasisPtr make_basis(int particles, int modes, int first_modes, std::size_t cap = kDefaultDimensionCap);

/// {"N", "M", "m", "D", "sectors": [{"k", "occ_first", "occ_second"}]}.
nlohmann::json to_json(const BasisTable& basis);

}  // namespace bosent
