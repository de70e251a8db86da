#pragma once

#include <vector>

#include "bosent/linalg.hpp"

namespace bosent {

/// coeff * E_{row,col}.
struct MatrixUnit {
  Eigen::Index row;
  Eigen::Index col;
  Complex coeff;
};

/// Sparse matrix given as a sum of units. Every term used in an LMI is
/// Hermitian as a whole.
using SparseTerm = std::vector<MatrixUnit>;

/// One linear matrix inequality  constant + sum_i x_i terms[i]  >= 0.
struct LmiBlock {
  Matrix constant;
  std::vector<SparseTerm> terms;  // one per variable; may be empty
};

/// minimize cost . x  subject to every block being positive semidefinite.
struct LmiProblem {
  RealVector cost;
  std::vector<LmiBlock> blocks;

  Eigen::Index variables() const { return cost.size(); }
};

struct LmiOptions {
  double gap_tolerance = 1e-9;  // absolute, on primal - dual
  int max_iterations = 10000;   // Newton steps, all stages included
  double barrier_growth = 8.0;
  double centering_tolerance = 1e-7;  // on lambda^2 / 2
};

struct LmiSolution {
  RealVector x;                    // strictly feasible
  double primal = 0.0;             // cost . x, an upper bound on the optimum
  double dual = 0.0;               // certified lower bound on the optimum
  double dual_residual = 0.0;      // max_i |sum_j <A_ji, Z_j> - c_i|
  std::vector<Matrix> dual_blocks;  // Z_j >= 0
  int iterations = 0;

  double gap() const { return primal - dual; }
};

/// Log-barrier path following from a strictly feasible `start`. On
/// return the dual blocks satisfy the dual equality constraints to
/// `dual_residual` and are PSD, so `dual` bounds the optimum from below.
/// Throws SolverError when the gap is not certified within the iteration cap,
/// and ValidationError when `start` is not strictly feasible.
LmiSolution minimize(const LmiProblem& problem, const RealVector& start, const LmiOptions& options = {});

/// Real parametrization of d x d Hermitian matrices: d diagonal variables,
/// then a real and an imaginary variable per pair a < b.
std::vector<SparseTerm> hermitian_basis(Eigen::Index d);

/// Maps x back to the Hermitian matrix of hermitian_basis(d).
Matrix assemble_hermitian(const RealVector& x, Eigen::Index d);

}  // namespace bosent
