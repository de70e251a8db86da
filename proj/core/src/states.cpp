#include "bosent/states.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "bosent/entanglement.hpp"
#include "bosent/errors.hpp"

namespace bosent {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_basis(const BasisPtr& basis) {
  if (!basis) throw ValidationError("state requires a basis table");
}

void require_two_mode(const BasisPtr& basis, const char* what) {
  require_basis(basis);
  if (!basis->is_two_mode()) {
    throw ValidationError(std::string(what) + " requires a two-mode basis (M=2, m=1), got M=" +
                          std::to_string(basis->modes()));
  }
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(BasisPtr basis, const Matrix& m) {
  require_basis(basis);
  const auto d = static_cast<Eigen::Index>(basis->dim());
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << "dimension invariant violated: matrix is " << m.rows() << "x" << m.cols() << " but the basis (N="
       << basis->particles() << ", M=" << basis->modes() << ", m=" << basis->first_modes() << ") has D=" << d;
    throw ValidationError(os.str());
  }

  std::vector<std::string> errors;
  const double scale = linalg::tolerance_scale(m);
  const auto defect = linalg::hermiticity_defect(m);
  if (defect.value > linalg::kHermitianTol * scale) {
    errors.push_back("Hermiticity invariant violated: worst pair (" + std::to_string(defect.row) + "," +
                     std::to_string(defect.col) + ") differs by " + fmt(defect.value));
  }
  Matrix h = (m + m.adjoint()) * 0.5;
  const double trace = h.trace().real();
  if (std::abs(trace - 1.0) > kRenormalizeTol) {
    errors.push_back("trace invariant violated: Tr rho = " + fmt(trace) + ", expected 1");
  } else if (trace > 0.0) {
    h /= trace;
  }
  const double min_eig = linalg::min_eigenvalue(HermitianMatrix::from_trusted(h));
  if (min_eig < -kPositivityTol) {
    errors.push_back("positivity (PSD) invariant violated: smallest eigenvalue " + fmt(min_eig));
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return DensityMatrix(std::move(basis), std::move(h));
}

DensityMatrix DensityMatrix::from_trusted(BasisPtr basis, Matrix m) {
  require_basis(basis);
  Matrix h = (m + m.adjoint()) * 0.5;
  const double trace = h.trace().real();
  if (trace > 0.0) h /= trace;
  return DensityMatrix(std::move(basis), std::move(h));
}

PureState PureState::make(BasisPtr basis, const Vector& amplitudes) {
  require_basis(basis);
  if (amplitudes.size() != static_cast<Eigen::Index>(basis->dim())) {
    throw ValidationError("amplitude vector has length " + std::to_string(amplitudes.size()) + ", basis has D=" +
                          std::to_string(basis->dim()));
  }
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw ValidationError("pure state amplitudes are the zero vector");
  if (std::abs(norm * norm - 1.0) > kRenormalizeTol) {
    throw ValidationError("normalization invariant violated: sum |amplitude|^2 = " + fmt(norm * norm));
  }
  return PureState(std::move(basis), amplitudes / norm);
}

Matrix PureState::sector_coefficients(int k) const {
  const Sector& s = basis_->sector(k);
  Matrix c(static_cast<Eigen::Index>(s.dim_first()), static_cast<Eigen::Index>(s.dim_second()));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      c(i, j) = amps_(static_cast<Eigen::Index>(s.offset) + i * c.cols() + j);
  return c;
}

DensityMatrix to_density(const PureState& psi) {
  return DensityMatrix::from_trusted(psi.basis_ptr(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix totally_mixed(BasisPtr basis) {
  require_basis(basis);
  const auto d = static_cast<Eigen::Index>(basis->dim());
  Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix::from_trusted(std::move(basis), std::move(m));
}

PureState phase_state(BasisPtr basis, std::span<const double> phases) {
  require_two_mode(basis, "phase state");
  const auto d = static_cast<Eigen::Index>(basis->dim());
  if (static_cast<Eigen::Index>(phases.size()) != d) {
    throw ValidationError("phase state needs N+1 = " + std::to_string(d) + " phases, got " +
                          std::to_string(phases.size()));
  }
  Vector amps(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index k = 0; k < d; ++k) amps(k) = std::polar(norm, phases[static_cast<std::size_t>(k)]);
  return PureState::make(std::move(basis), amps);
}

DensityMatrix negative_coherence_state(BasisPtr basis) {
  require_two_mode(basis, "negative-coherence state");
  const int n = basis->particles();
  const auto d = static_cast<Eigen::Index>(n + 1);
  const double off = -1.0 / (static_cast<double>(n) * static_cast<double>(n + 1));
  Matrix m = Matrix::Constant(d, d, Complex{off, 0.0});
  m.diagonal().setConstant(Complex{1.0 / static_cast<double>(n + 1), 0.0});
  return DensityMatrix::from_matrix(std::move(basis), m);
}

PureState maximally_entangled(BasisPtr basis) {
  require_basis(basis);
  std::size_t schmidt_count = 0;
  for (const auto& s : basis->sectors()) schmidt_count += std::min(s.dim_first(), s.dim_second());
  const double amp = 1.0 / std::sqrt(static_cast<double>(schmidt_count));

  Vector amps = Vector::Zero(static_cast<Eigen::Index>(basis->dim()));
  for (const auto& s : basis->sectors()) {
    const std::size_t pairs = std::min(s.dim_first(), s.dim_second());
    for (std::size_t a = 0; a < pairs; ++a) {
      amps(static_cast<Eigen::Index>(s.offset + a * s.dim_second() + a)) = amp;
    }
  }
  return PureState::make(std::move(basis), amps);
}

DensityMatrix werner_like(double p, const PureState& psi) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("Werner weight p must lie in [0, 1], got " + fmt(p));
  const SchmidtSpectrum spectrum = schmidt(psi);
  const double expected = 1.0 / std::sqrt(static_cast<double>(spectrum.size()));
  bool maximal = true;
  for (const auto& block : spectrum.blocks)
    for (double c : block) maximal = maximal && std::abs(c - expected) <= 1e-8;
  if (!maximal) throw ValidationError("Werner-like state requires a maximally entangled pure state");

  const auto d = static_cast<Eigen::Index>(psi.dim());
  Matrix m = p * (psi.amplitudes() * psi.amplitudes().adjoint());
  m.diagonal().array() += Complex{(1.0 - p) / static_cast<double>(d), 0.0};
  return DensityMatrix::from_trusted(psi.basis_ptr(), std::move(m));
}

DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw ValidationError("mixture needs one weight per state and at least one state");
  }
  const BasisTable& basis = states.front().basis();
  double total = 0.0;
  Matrix m = Matrix::Zero(states.front().matrix().rows(), states.front().matrix().cols());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (weights[i] < 0.0) throw ValidationError("mixture weights must be nonnegative");
    if (states[i].basis().bipartition() != basis.bipartition()) {
      throw ValidationError("mixture components must share one basis");
    }
    m += weights[i] * states[i].matrix();
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kTraceTol) throw ValidationError("mixture weights must sum to 1, got " + fmt(total));
  return DensityMatrix::from_trusted(states.front().basis_ptr(), std::move(m));
}

SectoredState SectoredState::make(std::vector<Component> components) {
  if (components.empty()) throw ValidationError("superselection mixture needs at least one component");
  std::vector<std::string> errors;
  double total = 0.0;
  std::set<int> seen;
  const auto& ref = components.front().state.basis();
  for (const auto& c : components) {
    if (c.weight < 0.0) errors.push_back("weight invariant violated: negative weight " + fmt(c.weight));
    total += c.weight;
    const auto& b = c.state.basis();
    if (b.modes() != ref.modes() || b.first_modes() != ref.first_modes()) {
      errors.push_back("mode mismatch: all components must share (M, m) = (" + std::to_string(ref.modes()) + ", " +
                       std::to_string(ref.first_modes()) + ")");
    }
    if (!seen.insert(b.particles()).second) {
      errors.push_back("duplicate particle-number sector N=" + std::to_string(b.particles()));
    }
  }
  if (std::abs(total - 1.0) > kTraceTol) {
    errors.push_back("weight invariant violated: weights sum to " + fmt(total) + ", expected 1");
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return SectoredState(std::move(components));
}

}  // namespace bosent
