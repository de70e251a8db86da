#include "bosent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "bosent/errors.hpp"

namespace bosent::linalg {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

HermiticityDefect hermiticity_defect(const Matrix& m) {
  HermiticityDefect worst;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double d = std::abs(m(i, j) - std::conj(m(j, i)));
      if (d > worst.value) worst = {d, i, j};
    }
  }
  return worst;
}

HermitianMatrix::HermitianMatrix(Matrix m, double rel_tol) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "Hermitian matrix must be square, got " << m.rows() << "x" << m.cols();
    throw ValidationError(os.str());
  }
  const auto defect = hermiticity_defect(m);
  const double bound = std::max(rel_tol * tolerance_scale(m), kAbsoluteFloor);
  if (defect.value > bound) {
    std::ostringstream os;
    os.precision(3);
    os << "Hermiticity invariant violated: |m(" << defect.row << "," << defect.col << ") - conj(m("
       << defect.col << "," << defect.row << "))| = " << defect.value << " exceeds " << bound;
    throw ValidationError(os.str());
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix::HermitianMatrix(Matrix m, Trusted) : m_((m + m.adjoint()) * 0.5) {}

HermitianMatrix HermitianMatrix::from_trusted(Matrix m) { return HermitianMatrix(std::move(m), Trusted{}); }

EigenDecomposition eig_hermitian(const HermitianMatrix& m) {
  if (m.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw ValidationError("Hermitian eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigenvalues(const HermitianMatrix& m) {
  if (m.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("Hermitian eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const HermitianMatrix& m) {
  const RealVector ev = eigenvalues(m);
  return ev.size() ? ev(0) : 0.0;
}

double max_eigenvalue(const HermitianMatrix& m) {
  const RealVector ev = eigenvalues(m);
  return ev.size() ? ev(ev.size() - 1) : 0.0;
}

namespace {

// Union-find over indices coupled by a nonzero entry.
std::vector<std::vector<Eigen::Index>> connected_components(const Matrix& m) {
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (m(i, j) != Complex{0.0, 0.0}) {
        const auto a = find(i);
        const auto b = find(j);
        if (a != b) parent[a] = b;
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

}  // namespace

double trace_norm(const HermitianMatrix& m) {
  const Matrix& a = m.matrix();
  if (a.rows() <= 32) return eigenvalues(m).cwiseAbs().sum();

  double total = 0.0;
  for (const auto& group : connected_components(a)) {
    const auto k = static_cast<Eigen::Index>(group.size());
    if (k == 1) {
      total += std::abs(a(group[0], group[0]).real());
      continue;
    }
    Matrix sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = a(group[i], group[j]);
    total += eigenvalues(HermitianMatrix::from_trusted(std::move(sub))).cwiseAbs().sum();
  }
  return total;
}

double l1_norm(const Matrix& m) { return m.cwiseAbs().sum(); }

bool is_psd(const HermitianMatrix& m, double rel_tol) {
  return min_eigenvalue(m) >= -std::max(rel_tol * tolerance_scale(m.matrix()), kAbsoluteFloor);
}

}  // namespace bosent::linalg
