// SPDX-License-Identifier: Apache-2.0
//
// Minimal solvents of sum_{i=0}^{d} A_i X^i = 0.

#pragma once

#include <cstdint>
#include <optional>

#include "mpshift/core.hpp"
#include "mpshift/factorizations.hpp"

namespace mpshift {

/// Quadratic B_{-1} + B_0 X + B_1 X^2 of size N = n (d - 1) whose minimal
/// solvent has first block column [G; G^2; ...; G^{d-1}].
struct ReblockedQuadratic {
  CMatrix bm1;
  CMatrix b0;
  CMatrix b1;

  QuadCoeffs coeffs() const { return {bm1, b0, b1}; }
};

ReblockedQuadratic reblock(const MatrixPoly& p);

/// N x N matrix with block column [G; ...; G^{d-1}] and zeros elsewhere.
CMatrix block_solvent(const CMatrix& G, int degree);

enum class SolveMethod { CR, Eigen };

struct SolveOptions {
  SolveMethod method = SolveMethod::CR;
  double tol = 1e-14;
  int maxit = 64;
  std::uint64_t seed = 42;
};

struct Recovery {
  Complex lambda;
  Complex mu;
  CMatrix Q;
};

struct SolveReport {
  CMatrix G;
  int iterations = 0;
  /// ||sum A_i G^i||_F / sum ||A_i||_F for the polynomial handed in.
  double residual = 0.0;
  /// Convergence ratio of the polynomial actually iterated on (NaN if unavailable).
  double sigma = 0.0;
  bool shifted = false;
  std::optional<Recovery> recovery;
};

double solvent_residual(const MatrixPoly& p, const CMatrix& G);

SolveReport solve_unilateral(const MatrixPoly& p, const SolveOptions& options = {});

/// Moves the eigenvalue lambda (A(lambda) u = 0) to mu, solves the shifted
/// equation and recovers G = G~ + (lambda - mu) u v^*.
SolveReport shift_accelerated_solve(const MatrixPoly& p, Complex lambda, const CVector& u,
                                    const std::optional<CVector>& v, Complex mu,
                                    const SolveOptions& options = {});

struct Splitting {
  double sigma = 0.0;
  double max_inside = 0.0;
  double min_outside = 0.0;
};

/// Eigenvalues with |z| <= 1 + 1e-9 count as inside.
Splitting splitting(const MatrixPoly& p, std::uint64_t seed = 42);
double convergence_ratio(const MatrixPoly& p, std::uint64_t seed = 42);

/// ceil(log2(ln tol / ln sigma)).
int expected_iterations(double sigma, double tol = 1e-14);

}  // namespace mpshift
