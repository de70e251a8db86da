#include "bosent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "bosent/blocks.hpp"
#include "bosent/errors.hpp"

namespace bosent {

namespace {

struct Entry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

// Nonzero entries of the partially transposed embedding of rho.
std::vector<Entry> transposed_entries(const DensityMatrix& rho) {
  const BasisTable& basis = rho.basis();
  const std::size_t nb = basis.dim_second();
  const Matrix& m = rho.matrix();
  std::vector<Entry> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const EmbeddedIndex cj = basis.embed_index(static_cast<std::size_t>(j));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex v = m(i, j);
      if (v == Complex{0.0, 0.0}) continue;
      const EmbeddedIndex ci = basis.embed_index(static_cast<std::size_t>(i));
      // |a b><a' b'|  ->  |a b'><a' b|
      out.push_back({ci.a * nb + cj.b, cj.a * nb + ci.b, v});
    }
  }
  return out;
}

double trace_norm_of_entries(const std::vector<Entry>& entries) {
  // Compress touched indices, then split into connected components.
  std::unordered_map<std::size_t, std::size_t> local;
  std::vector<std::size_t> parent;
  auto id = [&](std::size_t g) {
    auto [it, inserted] = local.try_emplace(g, parent.size());
    if (inserted) parent.push_back(parent.size());
    return it->second;
  };
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  idx.reserve(entries.size());
  for (const auto& e : entries) {
    const std::size_t r = id(e.row);
    const std::size_t c = id(e.col);
    idx.emplace_back(r, c);
    const std::size_t a = find(r);
    const std::size_t b = find(c);
    if (a != b) parent[a] = b;
  }
  const std::size_t n = parent.size();
  std::vector<std::size_t> comp_of(n), pos_in(n), comp_size;
  std::unordered_map<std::size_t, std::size_t> comp_id;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = comp_id.try_emplace(find(i), comp_size.size());
    if (inserted) comp_size.push_back(0);
    comp_of[i] = it->second;
    pos_in[i] = comp_size[it->second]++;
  }
  std::vector<Matrix> comps(comp_size.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto s = static_cast<Eigen::Index>(comp_size[c]);
    comps[c] = Matrix::Zero(s, s);
  }
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto [r, c] = idx[e];
    comps[comp_of[r]](static_cast<Eigen::Index>(pos_in[r]), static_cast<Eigen::Index>(pos_in[c])) += entries[e].value;
  }
  double total = 0.0;
  for (auto& c : comps) {
    if (c.rows() == 1) {
      total += std::abs(c(0, 0).real());
    } else {
      total += linalg::eigenvalues(HermitianMatrix::from_trusted(std::move(c))).cwiseAbs().sum();
    }
  }
  return total;
}

}  // namespace

Matrix partial_transpose(const Matrix& m, Eigen::Index dim_first, Eigen::Index dim_second) {
  const Eigen::Index n = dim_first * dim_second;
  if (m.rows() != n || m.cols() != n) {
    throw ValidationError("partial transpose: matrix size does not match " + std::to_string(dim_first) + "x" +
                          std::to_string(dim_second));
  }
  Matrix out(n, n);
  for (Eigen::Index a = 0; a < dim_first; ++a)
    for (Eigen::Index b = 0; b < dim_second; ++b)
      for (Eigen::Index ap = 0; ap < dim_first; ++ap)
        for (Eigen::Index bp = 0; bp < dim_second; ++bp)
          out(a * dim_second + b, ap * dim_second + bp) = m(a * dim_second + bp, ap * dim_second + b);
  return out;
}

Matrix embed(const DensityMatrix& rho) {
  const BasisTable& basis = rho.basis();
  const std::size_t nb = basis.dim_second();
  const auto n = static_cast<Eigen::Index>(basis.dim_first() * nb);
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto ci = basis.embed_index(i);
    for (std::size_t j = 0; j < basis.dim(); ++j) {
      const auto cj = basis.embed_index(j);
      out(static_cast<Eigen::Index>(ci.a * nb + ci.b), static_cast<Eigen::Index>(cj.a * nb + cj.b)) =
          rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

HermitianMatrix partial_transpose(const DensityMatrix& rho, std::size_t cap) {
  const BasisTable& basis = rho.basis();
  const std::size_t n = basis.dim_first() * basis.dim_second();
  if (n > cap) {
    throw ValidationError("embedded dimension A_dim*B_dim = " + std::to_string(n) + " exceeds the cap " +
                          std::to_string(cap));
  }
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& e : transposed_entries(rho)) {
    out(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  }
  return HermitianMatrix::from_trusted(std::move(out));
}

double negativity(const DensityMatrix& rho) {
  const double norm = trace_norm_of_entries(transposed_entries(rho));
  const double n = 0.5 * (norm - rho.matrix().trace().real());
  return n < 1e-12 ? 0.0 : n;
}

std::size_t SchmidtSpectrum::size() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

std::size_t SchmidtSpectrum::rank(double tol) const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += static_cast<std::size_t>(std::count_if(b.begin(), b.end(), [&](double c) { return c > tol; }));
  return n;
}

double SchmidtSpectrum::sum() const {
  double s = 0.0;
  for (const auto& b : blocks) s = std::accumulate(b.begin(), b.end(), s);
  return s;
}

double SchmidtSpectrum::sum_squares() const {
  double s = 0.0;
  for (const auto& b : blocks)
    for (double c : b) s += c * c;
  return s;
}

SchmidtSpectrum schmidt(const PureState& psi) {
  SchmidtSpectrum out;
  for (const auto& s : psi.basis().sectors()) {
    const Matrix c = psi.sector_coefficients(s.k);
    Eigen::JacobiSVD<Matrix> svd(c);
    const RealVector sv = svd.singularValues();  // nonincreasing
    out.blocks.emplace_back(sv.data(), sv.data() + sv.size());
  }
  return out;
}

double pure_negativity_from_schmidt(const SchmidtSpectrum& s) {
  const double sum = s.sum();
  return std::max(0.0, 0.5 * (sum * sum - 1.0));
}

std::string_view to_string(Separability s) {
  switch (s) {
    case Separability::separable:
      return "separable";
    case Separability::entangled:
      return "entangled";
    case Separability::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(SeparabilityReason r) {
  switch (r) {
    case SeparabilityReason::non_block_diagonal:
      return "non-block-diagonal";
    case SeparabilityReason::block_npt:
      return "block-NPT";
    case SeparabilityReason::all_blocks_ppt:
      return "all-blocks-PPT";
  }
  return "";
}

bool is_ppt(const Matrix& block, Eigen::Index dim_first, Eigen::Index dim_second, double tol) {
  if (dim_first == 1 || dim_second == 1) return true;
  const HermitianMatrix pt = HermitianMatrix::from_trusted(partial_transpose(block, dim_first, dim_second));
  return linalg::is_psd(pt, tol);
}

bool ppt_exact_for_basis(const BasisTable& basis) {
  const int m = basis.first_modes();
  return basis.is_two_mode() || m == 1 || m == basis.modes() - 1;
}

SeparabilityVerdict is_separable(const DensityMatrix& rho, double tol) {
  SeparabilityVerdict v;
  if (!is_block_diagonal(rho, tol)) {
    v.status = Separability::entangled;
    v.exact = true;
    v.reasons.push_back(SeparabilityReason::non_block_diagonal);
    return v;
  }
  const BasisTable& basis = rho.basis();
  bool small_blocks = true;
  for (const auto& s : basis.sectors()) {
    const Matrix block = sector_block(rho, s.k);
    if (block.trace().real() <= kEmptyBlockWeight) continue;
    const auto da = static_cast<Eigen::Index>(s.dim_first());
    const auto db = static_cast<Eigen::Index>(s.dim_second());
    small_blocks = small_blocks && (std::min(da, db) == 1 || (std::min(da, db) <= 2 && std::max(da, db) <= 3));
    if (!is_ppt(block, da, db, tol)) {
      v.status = Separability::entangled;
      v.exact = true;
      v.reasons = {SeparabilityReason::block_npt};
      return v;
    }
  }
  v.reasons.push_back(SeparabilityReason::all_blocks_ppt);
  v.exact = ppt_exact_for_basis(basis) || small_blocks;
  v.status = v.exact ? Separability::separable : Separability::undetermined;
  return v;
}

ReducedState reduced_state(const DensityMatrix& rho, Side keep) {
  const BasisTable& basis = rho.basis();
  const bool first = keep == Side::first;
  const auto n = static_cast<Eigen::Index>(first ? basis.dim_first() : basis.dim_second());
  Matrix r = Matrix::Zero(n, n);
  const Matrix& m = rho.matrix();
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto ci = basis.embed_index(i);
    for (std::size_t j = 0; j < basis.dim(); ++j) {
      const auto cj = basis.embed_index(j);
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      if (first && ci.b == cj.b) r(static_cast<Eigen::Index>(ci.a), static_cast<Eigen::Index>(cj.a)) += m(ii, jj);
      if (!first && ci.a == cj.a) r(static_cast<Eigen::Index>(ci.b), static_cast<Eigen::Index>(cj.b)) += m(ii, jj);
    }
  }
  ReducedState out{HermitianMatrix::from_trusted(std::move(r)), 0.0, 0.0};
  const RealVector ev = linalg::eigenvalues(out.matrix);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double l = ev(i);
    if (l > 1e-15) out.entropy -= l * std::log(l);
  }
  out.purity = (out.matrix.matrix() * out.matrix.matrix()).trace().real();
  return out;
}

}  // namespace bosent
