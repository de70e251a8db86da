#include "bosent/fock_basis.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "bosent/errors.hpp"

namespace bosent {

Bipartition::Bipartition(int particles, int modes, int first_modes)
    : particles_(particles), modes_(modes), first_modes_(first_modes) {
  std::vector<std::string> errors;
  if (particles < 1) errors.push_back("particle count N must be >= 1, got " + std::to_string(particles));
  if (modes < 2) errors.push_back("mode count M must be >= 2, got " + std::to_string(modes));
  if (first_modes < 1 || first_modes > modes - 1) {
    errors.push_back("bipartition m must satisfy 1 <= m <= M-1, got m=" + std::to_string(first_modes) +
                     ", M=" + std::to_string(modes));
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step.
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    const std::uint64_t r = result / g;
    const std::uint64_t f = factor / (static_cast<std::uint64_t>(i) / g);
    if (r > std::numeric_limits<std::uint64_t>::max() / f) {
      throw ValidationError("binomial C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
    }
    result = r * f;
  }
  return result;
}

std::size_t total_dim(int particles, int modes, std::size_t cap) {
  if (particles < 1 || modes < 1) {
    throw ValidationError("total_dim requires N >= 1 and M >= 1");
  }
  const std::uint64_t d = binomial(particles + modes - 1, particles);
  if (d > cap) {
    std::ostringstream os;
    os << "Hilbert space dimension C(" << particles + modes - 1 << "," << particles << ") = " << d
       << " exceeds the cap " << cap;
    throw ValidationError(os.str());
  }
  return static_cast<std::size_t>(d);
}

namespace {

void fill_compositions(int remaining, int position, Occupation& current, std::vector<Occupation>& out) {
  if (position + 1 == static_cast<int>(current.size())) {
    current[position] = remaining;
    out.push_back(current);
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    current[position] = n;
    fill_compositions(remaining - n, position + 1, current, out);
  }
}

}  // namespace

std::vector<Occupation> compositions_descending(int total, int parts) {
  std::vector<Occupation> out;
  if (parts <= 0 || total < 0) return out;
  Occupation current(static_cast<std::size_t>(parts), 0);
  fill_compositions(total, 0, current, out);
  return out;
}

BasisTable BasisTable::enumerate(const Bipartition& bp, std::size_t cap) {
  const std::size_t expected = total_dim(bp.particles(), bp.modes(), cap);
  BasisTable table(bp);
  const int n = bp.particles();
  table.sectors_.reserve(static_cast<std::size_t>(n) + 1);

  std::size_t offset = 0;
  std::size_t offset_first = 0;
  std::size_t offset_second = 0;
  for (int k = 0; k <= n; ++k) {
    Sector s;
    s.k = k;
    s.first = compositions_descending(k, bp.first_modes());
    s.second = compositions_descending(n - k, bp.second_modes());
    s.offset = offset;
    s.offset_first = offset_first;
    s.offset_second = offset_second;
    offset += s.dim();
    offset_first += s.dim_first();
    offset_second += s.dim_second();
    table.sectors_.push_back(std::move(s));
  }
  table.dim_ = offset;
  table.dim_first_ = offset_first;
  table.dim_second_ = offset_second;
  if (table.dim_ != expected) {
    throw ValidationError("internal error: sector dimensions do not sum to C(N+M-1, N)");
  }

  table.labels_.reserve(table.dim_);
  table.embedded_.reserve(table.dim_);
  for (const auto& s : table.sectors_) {
    for (std::size_t i = 0; i < s.dim_first(); ++i) {
      for (std::size_t j = 0; j < s.dim_second(); ++j) {
        table.labels_.push_back({s.k, static_cast<int>(i) + 1, static_cast<int>(j) + 1});
        table.embedded_.push_back({s.offset_first + i, s.offset_second + j});
      }
    }
  }
  return table;
}

const Sector& BasisTable::sector(int k) const {
  if (k < 0 || k > particles()) {
    throw ValidationError("sector k=" + std::to_string(k) + " outside 0.." + std::to_string(particles()));
  }
  return sectors_[static_cast<std::size_t>(k)];
}

std::size_t BasisTable::flat_index(int k, int sigma, int sigma_prime) const {
  const Sector& s = sector(k);
  if (sigma < 1 || static_cast<std::size_t>(sigma) > s.dim_first() || sigma_prime < 1 ||
      static_cast<std::size_t>(sigma_prime) > s.dim_second()) {
    std::ostringstream os;
    os << "label (k=" << k << ", sigma=" << sigma << ", sigma'=" << sigma_prime << ") out of range; sector has "
       << s.dim_first() << "x" << s.dim_second() << " states";
    throw ValidationError(os.str());
  }
  return s.offset + static_cast<std::size_t>(sigma - 1) * s.dim_second() + static_cast<std::size_t>(sigma_prime - 1);
}

BasisLabel BasisTable::label(std::size_t flat) const {
  if (flat >= dim_) throw ValidationError("flat index " + std::to_string(flat) + " out of range");
  return labels_[flat];
}

EmbeddedIndex BasisTable::embed_index(int k, int sigma, int sigma_prime) const {
  return embedded_[flat_index(k, sigma, sigma_prime)];
}

Occupation BasisTable::occupation(std::size_t flat) const {
  const BasisLabel l = label(flat);
  const Sector& s = sectors_[static_cast<std::size_t>(l.k)];
  Occupation full = s.first[static_cast<std::size_t>(l.sigma - 1)];
  const auto& tail = s.second[static_cast<std::size_t>(l.sigma_prime - 1)];
  full.insert(full.end(), tail.begin(), tail.end());
  return full;
}

std::optional<std::size_t> BasisTable::index_of(const Occupation& full) const {
  if (static_cast<int>(full.size()) != modes()) return std::nullopt;
  const int m = first_modes();
  int k = 0;
  int total = 0;
  for (int i = 0; i < modes(); ++i) {
    if (full[i] < 0) return std::nullopt;
    total += full[i];
    if (i < m) k += full[i];
  }
  if (total != particles()) return std::nullopt;
  const Sector& s = sectors_[static_cast<std::size_t>(k)];
  const Occupation head(full.begin(), full.begin() + m);
  const Occupation tail(full.begin() + m, full.end());
  // Lists are sorted descending, so a binary search applies.
  auto locate = [](const std::vector<Occupation>& list, const Occupation& v) -> std::optional<std::size_t> {
    auto it = std::lower_bound(list.begin(), list.end(), v, std::greater<>());
    if (it == list.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - list.begin());
  };
  const auto i = locate(s.first, head);
  const auto j = locate(s.second, tail);
  if (!i || !j) return std::nullopt;
  return s.offset + *i * s.dim_second() + *j;
}

BasisPtr make_basis(int particles, int modes, int first_modes, std::size_t cap) {
  return std::make_shared<const BasisTable>(BasisTable::enumerate(Bipartition(particles, modes, first_modes), cap));
}

nlohmann::json to_json(const BasisTable& basis) {
  nlohmann::json sectors = nlohmann::json::array();
  for (const auto& s : basis.sectors()) {
    sectors.push_back({{"k", s.k},
                       {"occ_first", s.first},
                       {"occ_second", s.second},
                       {"dims", {s.dim_first(), s.dim_second()}}});
  }
  return {{"N", basis.particles()},
          {"M", basis.modes()},
          {"m", basis.first_modes()},
          {"D", basis.dim()},
          {"A_dim", basis.dim_first()},
          {"B_dim", basis.dim_second()},
          {"sectors", std::move(sectors)}};
}

}  // namespace bosent
