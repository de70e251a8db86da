#include "bosent/lmi_solver.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "bosent/errors.hpp"

namespace bosent {

namespace {

struct BlockState {
  Matrix inverse;  // G_j = F_j^{-1}
  double logdet = 0.0;
};

Matrix evaluate_block(const LmiBlock& block, const RealVector& x) {
  Matrix f = block.constant;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    if (xi == 0.0) continue;
    for (const auto& u : block.terms[static_cast<std::size_t>(i)]) f(u.row, u.col) += xi * u.coeff;
  }
  return f;
}

Matrix apply_terms(const LmiBlock& block, const RealVector& dx) {
  Matrix f = Matrix::Zero(block.constant.rows(), block.constant.cols());
  for (Eigen::Index i = 0; i < dx.size(); ++i) {
    for (const auto& u : block.terms[static_cast<std::size_t>(i)]) f(u.row, u.col) += dx(i) * u.coeff;
  }
  return f;
}

// Cholesky-based; nullopt if F_j(x) is not positive definite.
std::optional<std::vector<BlockState>> factor(const LmiProblem& p, const RealVector& x, bool need_inverse) {
  std::vector<BlockState> out;
  out.reserve(p.blocks.size());
  for (const auto& block : p.blocks) {
    const Matrix f = evaluate_block(block, x);
    Eigen::LLT<Matrix> llt(f);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const auto diag = llt.matrixLLT().diagonal();
    BlockState s;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      const double d = diag(i).real();
      if (!(d > 0.0)) return std::nullopt;
      s.logdet += 2.0 * std::log(d);
    }
    if (need_inverse) s.inverse = llt.solve(Matrix::Identity(f.rows(), f.cols()));
    out.push_back(std::move(s));
  }
  return out;
}

double barrier_value(const LmiProblem& p, const RealVector& x, double t, const std::vector<BlockState>& st) {
  double v = t * p.cost.dot(x);
  for (const auto& s : st) v -= s.logdet;
  return v;
}

// <A, G> = Re Tr(G A) for a Hermitian sparse term A.
double pairing(const SparseTerm& term, const Matrix& g) {
  double v = 0.0;
  for (const auto& u : term) v += (u.coeff * g(u.col, u.row)).real();
  return v;
}

// Terms of one block in contiguous storage: units of variable i are
// units[start[i] .. start[i + 1]).
struct FlatTerms {
  std::vector<Eigen::Index> start;
  std::vector<MatrixUnit> units;
};

std::vector<FlatTerms> flatten(const LmiProblem& p) {
  std::vector<FlatTerms> out;
  for (const auto& block : p.blocks) {
    FlatTerms f;
    f.start.reserve(block.terms.size() + 1);
    f.start.push_back(0);
    for (const auto& t : block.terms) {
      f.units.insert(f.units.end(), t.begin(), t.end());
      f.start.push_back(static_cast<Eigen::Index>(f.units.size()));
    }
    out.push_back(std::move(f));
  }
  return out;
}

void gradient_hessian(const LmiProblem& p, const std::vector<FlatTerms>& flat, double t,
                      const std::vector<BlockState>& st, RealVector& grad, RealMatrix& hess) {
  const Eigen::Index n = p.variables();
  grad = t * p.cost;
  hess = RealMatrix::Zero(n, n);
  for (std::size_t j = 0; j < p.blocks.size(); ++j) {
    const FlatTerms& f = flat[j];
    const Matrix& g = st[j].inverse;
    const MatrixUnit* units = f.units.data();
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index ib = f.start[static_cast<std::size_t>(i)];
      const Eigen::Index ie = f.start[static_cast<std::size_t>(i) + 1];
      if (ib == ie) continue;
      for (Eigen::Index a = ib; a < ie; ++a) grad(i) -= (units[a].coeff * g(units[a].col, units[a].row)).real();
      double* column = hess.col(i).data();
      for (Eigen::Index l = i; l < n; ++l) {
        const Eigen::Index lb = f.start[static_cast<std::size_t>(l)];
        const Eigen::Index le = f.start[static_cast<std::size_t>(l) + 1];
        double h = 0.0;
        // Tr(G E_{r c} G E_{r' c'}) = G(c', r) G(c, r')
        for (Eigen::Index a = ib; a < ie; ++a) {
          const MatrixUnit& u = units[a];
          for (Eigen::Index b = lb; b < le; ++b) {
            const MatrixUnit& v = units[b];
            h += (u.coeff * v.coeff * g(v.col, u.row) * g(u.col, v.row)).real();
          }
        }
        column[l] += h;
      }
    }
  }
  hess.triangularView<Eigen::StrictlyUpper>() = hess.transpose();
}

RealVector newton_direction(const RealMatrix& hess, const RealVector& grad) {
  Eigen::LLT<RealMatrix> llt(hess);
  if (llt.info() == Eigen::Success) {
    RealVector dx = -llt.solve(grad);
    if (dx.allFinite()) return dx;
  }
  Eigen::LDLT<RealMatrix> ldlt(hess);
  RealVector dx = -ldlt.solve(grad);
  if (ldlt.info() != Eigen::Success || !dx.allFinite()) {
    const double shift = 1e-12 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff());
    RealMatrix reg = hess;
    reg.diagonal().array() += shift;
    dx = -reg.ldlt().solve(grad);
  }
  return dx;
}

}  // namespace

std::vector<SparseTerm> hermitian_basis(Eigen::Index d) {
  std::vector<SparseTerm> terms;
  terms.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index a = 0; a < d; ++a) terms.push_back({{a, a, Complex{1.0, 0.0}}});
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a + 1; b < d; ++b) {
      terms.push_back({{a, b, Complex{1.0, 0.0}}, {b, a, Complex{1.0, 0.0}}});
      terms.push_back({{a, b, Complex{0.0, 1.0}}, {b, a, Complex{0.0, -1.0}}});
    }
  }
  return terms;
}

Matrix assemble_hermitian(const RealVector& x, Eigen::Index d) {
  Matrix m = Matrix::Zero(d, d);
  const auto terms = hermitian_basis(d);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (const auto& u : terms[i]) m(u.row, u.col) += x(static_cast<Eigen::Index>(i)) * u.coeff;
  return m;
}

LmiSolution minimize(const LmiProblem& problem, const RealVector& start, const LmiOptions& options) {
  const Eigen::Index n = problem.variables();
  for (const auto& b : problem.blocks) {
    if (static_cast<Eigen::Index>(b.terms.size()) != n) {
      throw ValidationError("LMI block has " + std::to_string(b.terms.size()) + " terms for " + std::to_string(n) +
                            " variables");
    }
  }
  double barrier_degree = 0.0;
  for (const auto& b : problem.blocks) barrier_degree += static_cast<double>(b.constant.rows());

  RealVector x = start;
  auto state = factor(problem, x, true);
  if (!state) throw ValidationError("LMI starting point is not strictly feasible");

  double t = 1.0;
  int iterations = 0;
  double last_gap = std::numeric_limits<double>::infinity();
  double last_residual = 0.0;
  const auto flat = flatten(problem);
  RealVector grad;
  RealMatrix hess;

  while (iterations < options.max_iterations) {
    // Centering.
    double decrement2 = std::numeric_limits<double>::infinity();
    RealVector dx;
    while (iterations < options.max_iterations) {
      gradient_hessian(problem, flat, t, *state, grad, hess);
      dx = newton_direction(hess, grad);
      decrement2 = -grad.dot(dx);
      if (decrement2 * 0.5 <= options.centering_tolerance) break;
      ++iterations;
      const double phi = barrier_value(problem, x, t, *state);
      double step = 1.0;
      bool moved = false;
      for (int k = 0; k < 60; ++k, step *= 0.5) {
        const RealVector trial = x + step * dx;
        auto trial_state = factor(problem, trial, false);
        if (!trial_state) continue;
        if (barrier_value(problem, trial, t, *trial_state) <= phi - 0.01 * step * decrement2) {
          x = trial;
          moved = true;
          break;
        }
      }
      if (!moved) break;  // numerically centered
      state = factor(problem, x, true);
    }

    // Dual point from the Newton step: Z_j = (G_j - G_j A_j(dx) G_j) / t
    // satisfies sum_j A_j^*(Z_j) = c up to the linear solve.
    LmiSolution sol;
    sol.x = x;
    sol.primal = problem.cost.dot(x);
    sol.dual = 0.0;
    bool dual_psd = true;
    for (std::size_t j = 0; j < problem.blocks.size(); ++j) {
      const Matrix& g = (*state)[j].inverse;
      Matrix z = (g - g * apply_terms(problem.blocks[j], dx) * g) / t;
      z = (z + z.adjoint()).eval() * 0.5;
      Eigen::SelfAdjointEigenSolver<Matrix> es(z, Eigen::EigenvaluesOnly);
      const double zmin = es.eigenvalues().size() ? es.eigenvalues()(0) : 0.0;
      if (zmin < -1e-12 * (1.0 + es.eigenvalues().cwiseAbs().maxCoeff())) dual_psd = false;
      sol.dual -= (problem.blocks[j].constant * z).trace().real();
      sol.dual_blocks.push_back(std::move(z));
    }
    double residual = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < problem.blocks.size(); ++j)
        s += pairing(problem.blocks[j].terms[static_cast<std::size_t>(i)], sol.dual_blocks[j]);
      residual = std::max(residual, std::abs(s - problem.cost(i)));
    }
    sol.dual_residual = residual;
    sol.iterations = iterations;
    if (dual_psd) {
      last_gap = sol.gap();
      last_residual = residual;
    }
    if (dual_psd && sol.gap() <= options.gap_tolerance && residual <= 1e-6) return sol;
    // Stop growing t once the barrier term alone is far below the target;
    // further progress is limited by floating point.
    if (barrier_degree / t < 1e-3 * options.gap_tolerance) {
      std::ostringstream os;
      os << "LMI solver stalled: gap " << last_gap << " above tolerance " << options.gap_tolerance;
      throw SolverError(os.str(), last_gap, last_residual, iterations);
    }
    t *= options.barrier_growth;
  }
  std::ostringstream os;
  os << "LMI solver hit the iteration cap (" << options.max_iterations << ") with gap " << last_gap
     << ", dual residual " << last_residual;
  throw SolverError(os.str(), last_gap, last_residual, iterations);
}

}  // namespace bosent
