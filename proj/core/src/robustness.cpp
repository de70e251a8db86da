#include "bosent/robustness.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "bosent/entanglement.hpp"
#include "bosent/errors.hpp"
#include "bosent/io.hpp"

namespace bosent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool ppt_exact_block(Eigen::Index da, Eigen::Index db) { return std::min(da, db) <= 2 && std::max(da, db) <= 3; }

SparseTerm transpose_second(const SparseTerm& term, Eigen::Index db) {
  SparseTerm out;
  out.reserve(term.size());
  for (const auto& u : term) {
    const Eigen::Index a = u.row / db, b = u.row % db;
    const Eigen::Index ap = u.col / db, bp = u.col % db;
    out.push_back({a * db + bp, ap * db + b, u.coeff});
  }
  return out;
}

// sum_k p_k X_k placed on the sector blocks of the flat ordering.
Matrix assemble_block_mixing(const BasisTable& basis, const std::vector<BlockRobustness>& blocks) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  Matrix x = Matrix::Zero(d, d);
  for (const auto& b : blocks) {
    if (b.mixing.size() == 0) continue;
    const Sector& s = basis.sector(b.k);
    x.block(static_cast<Eigen::Index>(s.offset), static_cast<Eigen::Index>(s.offset), b.mixing.rows(),
            b.mixing.cols()) = b.weight * b.mixing;
  }
  return x;
}

struct BlockSummary {
  std::vector<BlockRobustness> blocks;
  double total = 0.0;
  double gap = 0.0;
  bool exact = true;
};

BlockSummary robustness_of_blocks(const DensityMatrix& rho, RobustnessKind kind, const RobustnessOptions& options) {
  BlockSummary out;
  const BlockDecomposition dec = block_decompose(rho);
  for (const auto& s : rho.basis().sectors()) {
    const auto k = static_cast<std::size_t>(s.k);
    if (!dec.blocks[k]) continue;
    BlockRobustness br = block_robustness(*dec.blocks[k], static_cast<Eigen::Index>(s.dim_first()),
                                          static_cast<Eigen::Index>(s.dim_second()), kind, options);
    br.k = s.k;
    br.weight = dec.weights[k];
    out.total += br.weight * br.value;
    out.gap += br.weight * br.gap;
    out.exact = out.exact && br.status == RobustnessStatus::exact;
    out.blocks.push_back(std::move(br));
  }
  return out;
}

GeneralizedBounds bounds_with_block_term(const DensityMatrix& rho, double block_term) {
  const BlockDecomposition dec = block_decompose(rho);
  GeneralizedBounds b;
  b.lambda_d = rg_bound_lambda(rho);
  b.block_term = block_term;
  b.non_block_l1 = linalg::l1_norm(dec.non_block);
  b.l1 = block_term + b.non_block_l1;
  b.l1_nd = linalg::l1_norm(dec.off_diagonal);
  return b;
}

}  // namespace

std::string_view to_string(RobustnessKind k) { return k == RobustnessKind::standard ? "standard" : "generalized"; }

std::string_view to_string(RobustnessStatus s) {
  switch (s) {
    case RobustnessStatus::exact:
      return "exact";
    case RobustnessStatus::lower_bound:
      return "lower_bound";
    case RobustnessStatus::bounds_only:
      return "bounds_only";
  }
  return "";
}

std::string_view to_string(BlockMethod m) {
  switch (m) {
    case BlockMethod::trivial_factor:
      return "trivial_factor";
    case BlockMethod::pure_negativity:
      return "pure_negativity";
    case BlockMethod::convex_oracle:
      return "convex_oracle";
  }
  return "";
}

ConvexOracleResult ppt_robustness(const Matrix& block, Eigen::Index dim_first, Eigen::Index dim_second,
                                  RobustnessKind kind, const LmiOptions& options) {
  const Eigen::Index n = dim_first * dim_second;
  if (block.rows() != n || block.cols() != n) {
    throw ValidationError("block is " + std::to_string(block.rows()) + "x" + std::to_string(block.cols()) +
                          ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
  const Matrix rho_pt = partial_transpose(block, dim_first, dim_second);
  const double pt_min = linalg::min_eigenvalue(HermitianMatrix::from_trusted(rho_pt));
  ConvexOracleResult out;
  if (pt_min >= -1e-12 * linalg::tolerance_scale(block)) {
    out.mixing = Matrix::Zero(n, n);
    return out;  // X = 0 is feasible and Tr X >= 0
  }

  LmiProblem problem;
  const auto basis = hermitian_basis(n);
  const auto vars = static_cast<Eigen::Index>(basis.size());
  problem.cost = RealVector::Zero(vars);
  problem.cost.head(n).setOnes();

  std::vector<SparseTerm> transposed;
  transposed.reserve(basis.size());
  for (const auto& t : basis) transposed.push_back(transpose_second(t, dim_second));

  problem.blocks.push_back({Matrix::Zero(n, n), basis});
  if (kind == RobustnessKind::standard) problem.blocks.push_back({Matrix::Zero(n, n), transposed});
  problem.blocks.push_back({rho_pt, transposed});

  RealVector start = RealVector::Zero(vars);
  start.head(n).setConstant(2.0 * (-pt_min) + 0.1);

  const LmiSolution sol = minimize(problem, start, options);
  out.value = sol.primal;
  out.lower = std::max(0.0, sol.dual);
  out.mixing = assemble_hermitian(sol.x, n);
  out.iterations = sol.iterations;
  return out;
}

double pure_state_robustness(const std::vector<double>& schmidt_coefficients) {
  const double s = std::accumulate(schmidt_coefficients.begin(), schmidt_coefficients.end(), 0.0);
  return std::max(0.0, s * s - 1.0);
}

BlockRobustness block_robustness(const Matrix& block, Eigen::Index dim_first, Eigen::Index dim_second,
                                 RobustnessKind kind, const RobustnessOptions& options) {
  BlockRobustness out;
  const Eigen::Index n = dim_first * dim_second;
  if (dim_first == 1 || dim_second == 1) {
    out.method = BlockMethod::trivial_factor;
    if (options.keep_witness) out.mixing = Matrix::Zero(n, n);
    return out;
  }

  const auto eig = linalg::eig_hermitian(HermitianMatrix::from_trusted(block));
  const double top = eig.values(eig.values.size() - 1);
  if (top >= 1.0 - options.purity_tol) {
    const Vector v = eig.vectors.col(eig.values.size() - 1);
    Matrix coeffs(dim_first, dim_second);
    for (Eigen::Index a = 0; a < dim_first; ++a)
      for (Eigen::Index b = 0; b < dim_second; ++b) coeffs(a, b) = v(a * dim_second + b);
    const RealVector sv = Eigen::JacobiSVD<Matrix>(coeffs).singularValues();
    out.value = pure_state_robustness(std::vector<double>(sv.data(), sv.data() + sv.size()));
    out.method = BlockMethod::pure_negativity;
    out.status = RobustnessStatus::exact;
    if (options.keep_witness) out.mixing = ppt_robustness(block, dim_first, dim_second, kind, options.solver).mixing;
    return out;
  }

  const ConvexOracleResult r = ppt_robustness(block, dim_first, dim_second, kind, options.solver);
  out.value = r.value;
  out.gap = r.value - r.lower;
  out.method = BlockMethod::convex_oracle;
  out.status = ppt_exact_block(dim_first, dim_second) ? RobustnessStatus::exact : RobustnessStatus::lower_bound;
  if (options.keep_witness) out.mixing = r.mixing;
  return out;
}

RobustnessReport robustness_standard(const DensityMatrix& rho, const RobustnessOptions& options) {
  RobustnessReport report;
  report.kind = RobustnessKind::standard;
  if (!is_block_diagonal(rho, options.block_tol)) {
    report.value = report.lower = report.upper = kInf;
    report.status = RobustnessStatus::exact;
    return report;
  }
  BlockSummary s = robustness_of_blocks(rho, RobustnessKind::standard, options);
  report.value = s.total;
  report.lower = s.total - s.gap;
  report.upper = s.total;
  report.status = s.exact ? RobustnessStatus::exact : RobustnessStatus::lower_bound;
  if (options.keep_witness) report.mixing = assemble_block_mixing(rho.basis(), s.blocks);
  report.per_block = std::move(s.blocks);
  return report;
}

RobustnessReport robustness_generalized(const DensityMatrix& rho, const RobustnessOptions& options) {
  RobustnessReport report;
  report.kind = RobustnessKind::generalized;
  BlockSummary s = robustness_of_blocks(rho, RobustnessKind::generalized, options);
  report.bounds = bounds_with_block_term(rho, s.total);
  if (is_block_diagonal(rho, options.block_tol)) {
    report.value = s.total;
    report.lower = s.total - s.gap;
    report.upper = s.total;
    report.status = s.exact ? RobustnessStatus::exact : RobustnessStatus::lower_bound;
  } else {
    report.lower = s.total - s.gap;
    report.upper = std::min(report.bounds->lambda_d, report.bounds->l1);
    report.value = report.upper;
    report.status = RobustnessStatus::bounds_only;
  }
  if (options.keep_witness) {
    Matrix x = assemble_block_mixing(rho.basis(), s.blocks);
    const Matrix w = diagonal_dominance_witness(rho);
    x += w - block_decompose(rho).non_block;
    report.mixing = std::move(x);
    report.dominance_witness = w;
  }
  report.per_block = std::move(s.blocks);
  return report;
}

RobustnessReport robustness(const DensityMatrix& rho, RobustnessKind kind, const RobustnessOptions& options) {
  return kind == RobustnessKind::standard ? robustness_standard(rho, options) : robustness_generalized(rho, options);
}

double rg_bound_lambda(const DensityMatrix& rho) {
  const BlockDecomposition dec = block_decompose(rho);
  const double top = linalg::max_eigenvalue(HermitianMatrix::from_trusted(dec.off_diagonal));
  return std::max(0.0, top) * static_cast<double>(rho.dim());
}

GeneralizedBounds rg_bounds(const DensityMatrix& rho, const RobustnessOptions& options) {
  return bounds_with_block_term(rho, robustness_of_blocks(rho, RobustnessKind::generalized, options).total);
}

double rg_bound_l1(const DensityMatrix& rho, const RobustnessOptions& options) { return rg_bounds(rho, options).l1; }

Matrix diagonal_dominance_witness(const DensityMatrix& rho) {
  const Matrix nb = block_decompose(rho).non_block;
  return Matrix(nb.cwiseAbs().rowwise().sum().cast<Complex>().asDiagonal());
}

Matrix generalized_mixing_matrix(const DensityMatrix& rho, const RobustnessOptions& options) {
  RobustnessOptions o = options;
  o.keep_witness = true;
  return *robustness_generalized(rho, o).mixing;
}

RobustnessReport robustness_superselection(const SectoredState& mixture, RobustnessKind kind,
                                           const RobustnessOptions& options) {
  RobustnessReport report;
  report.kind = kind;
  report.status = RobustnessStatus::exact;
  bool any_bounds_only = false;
  bool any_lower = false;
  for (const auto& c : mixture.components()) {
    SectorReport sr{c.state.basis().particles(), c.weight, robustness(c.state, kind, options)};
    if (c.weight > 0.0) {
      report.value += c.weight * sr.report.value;
      report.lower += c.weight * sr.report.lower;
      report.upper += c.weight * sr.report.upper;
      any_bounds_only = any_bounds_only || sr.report.status == RobustnessStatus::bounds_only;
      any_lower = any_lower || sr.report.status == RobustnessStatus::lower_bound;
    }
    report.sectors.push_back(std::move(sr));
  }
  if (any_bounds_only) {
    report.status = RobustnessStatus::bounds_only;
  } else if (any_lower) {
    report.status = RobustnessStatus::lower_bound;
  }
  return report;
}

namespace {

nlohmann::json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

nlohmann::json to_json(const RobustnessReport& report, bool emit_witness) {
  nlohmann::json j;
  j["kind"] = to_string(report.kind);
  j["value"] = number_or_inf(report.value);
  j["status"] = to_string(report.status);
  j["interval"] = {number_or_inf(report.lower), number_or_inf(report.upper)};
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : report.per_block) {
    blocks.push_back({{"k", b.k},
                      {"p", b.weight},
                      {"value", b.value},
                      {"method", to_string(b.method)},
                      {"status", to_string(b.status)},
                      {"gap", b.gap}});
  }
  j["per_block"] = std::move(blocks);
  if (report.bounds) {
    j["bounds"] = {{"lambda_D", report.bounds->lambda_d},
                   {"l1", report.bounds->l1},
                   {"l1_nd", report.bounds->l1_nd},
                   {"block_term", report.bounds->block_term},
                   {"nb_l1", report.bounds->non_block_l1}};
  }
  if (!report.sectors.empty()) {
    nlohmann::json sectors = nlohmann::json::array();
    for (const auto& s : report.sectors) {
      sectors.push_back({{"N", s.particles}, {"weight", s.weight}, {"report", to_json(s.report, emit_witness)}});
    }
    j["sectors"] = std::move(sectors);
  }
  if (emit_witness) {
    if (report.mixing) j["mixing"] = matrix_to_json(*report.mixing);
    if (report.dominance_witness) j["dominance_witness"] = matrix_to_json(*report.dominance_witness);
  }
  return j;
}

}  // namespace bosent
