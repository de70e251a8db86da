#include "bosent/modes.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "bosent/errors.hpp"

namespace bosent {

ModeUnitary::ModeUnitary(Matrix u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols() || u_.rows() < 1) throw ValidationError("mode unitary must be a nonempty square matrix");
  const Matrix defect = u_.adjoint() * u_ - Matrix::Identity(u_.rows(), u_.cols());
  const double worst = linalg::max_abs(defect);
  if (worst > kUnitarityTol) {
    throw ValidationError("unitarity invariant violated: max |U^dagger U - I| = " + std::to_string(worst));
  }
}

ModeUnitary balanced_beamsplitter() { return embedded_beamsplitter(2, 0, 1); }

ModeUnitary embedded_beamsplitter(int modes, int i, int j) {
  if (modes < 2 || i == j || i < 0 || j < 0 || i >= modes || j >= modes) {
    throw ValidationError("beamsplitter needs two distinct modes inside 0.." + std::to_string(modes - 1));
  }
  const double h = 1.0 / std::numbers::sqrt2;
  Matrix u = Matrix::Identity(modes, modes);
  u(i, i) = h;
  u(i, j) = h;
  u(j, i) = h;
  u(j, j) = -h;
  return ModeUnitary(std::move(u));
}

ModeUnitary random_mode_unitary(int modes, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix z(modes, modes);
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = Complex{gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return ModeUnitary(std::move(q));
}

std::uint64_t multinomial(const Occupation& parts) {
  std::uint64_t result = 1;
  int running = 0;
  for (int p : parts) {
    running += p;
    result *= binomial(running, p);
  }
  return result;
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

Matrix induced_unitary(const ModeUnitary& u, const BasisTable& basis) {
  const int modes = basis.modes();
  if (u.modes() != modes) {
    throw ValidationError("mode unitary acts on " + std::to_string(u.modes()) + " modes, basis has " +
                          std::to_string(modes));
  }
  const Matrix& um = u.matrix();
  const auto d = static_cast<Eigen::Index>(basis.dim());
  Matrix gamma = Matrix::Zero(d, d);

  for (std::size_t col = 0; col < basis.dim(); ++col) {
    const Occupation in = basis.occupation(col);
    // Polynomial in commuting creation operators: monomial exponents -> coefficient.
    std::map<Occupation, Complex> poly{{Occupation(static_cast<std::size_t>(modes), 0), Complex{1.0, 0.0}}};
    for (int i = 0; i < modes; ++i) {
      const int n_i = in[static_cast<std::size_t>(i)];
      if (n_i == 0) continue;
      // (sum_j U_ji a_j^dagger)^{n_i} by the multinomial theorem.
      std::map<Occupation, Complex> next;
      for (const auto& c : compositions_descending(n_i, modes)) {
        Complex term = static_cast<double>(multinomial(c));
        for (int j = 0; j < modes; ++j) {
          const int e = c[static_cast<std::size_t>(j)];
          if (e > 0) term *= std::pow(um(j, i), e);
        }
        if (term == Complex{0.0, 0.0}) continue;
        for (const auto& [mono, coeff] : poly) {
          Occupation m = mono;
          for (int j = 0; j < modes; ++j) m[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(j)];
          next[m] += coeff * term;
        }
      }
      poly = std::move(next);
    }
    double in_norm = 1.0;
    for (int n_i : in) in_norm *= factorial(n_i);
    in_norm = std::sqrt(in_norm);
    for (const auto& [mono, coeff] : poly) {
      double out_norm = 1.0;
      for (int e : mono) out_norm *= factorial(e);
      const auto row = basis.index_of(mono);
      if (!row) throw ValidationError("internal error: induced state leaves the N-particle sector");
      gamma(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) += coeff * std::sqrt(out_norm) / in_norm;
    }
  }
  return gamma;
}

DensityMatrix transform_state(const DensityMatrix& rho, const ModeUnitary& u) {
  const Matrix g = induced_unitary(u, rho.basis());
  return DensityMatrix::from_trusted(rho.basis_ptr(), g * rho.matrix() * g.adjoint());
}

PureState transform_state(const PureState& psi, const ModeUnitary& u) {
  const Matrix g = induced_unitary(u, psi.basis());
  return PureState::make(psi.basis_ptr(), g * psi.amplitudes());
}

}  // namespace bosent
