// SPDX-License-Identifier: Apache-2.0
//
// Eigenvalues, eigenvectors and invariant pairs of matrix polynomials.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpshift/core.hpp"

namespace mpshift {

/// Block companion pencil C1 - z C2 with det(C1 - z C2) = +-det A(z).
struct CompanionPencil {
  CMatrix c1;
  CMatrix c2;
};

CompanionPencil companion(const MatrixPoly& p);

struct Spectrum {
  /// n*d pairs sorted by modulus, infinite values last.
  std::vector<EigenPair> pairs;
  Complex cayley_point;
  std::vector<std::string> warnings;
};

/// All n*d eigenvalues of A(z), finite and infinite.
///
/// The pencil is mapped to the standard problem M = (C1 - c C2)^{-1} C2 for a
/// random c on |c| = 0.9, so that each eigenvalue theta of M corresponds to
/// z = c + 1/theta and theta = 0 to z = infinity. Right (and, when requested,
/// left) vectors are the smallest singular vectors of A(z), or of the leading
/// coefficient for infinite eigenvalues.
Spectrum polyeig(const MatrixPoly& p, std::uint64_t seed = 42, bool with_left = false);

/// Polishes (lambda, u) by alternating a Gauss-Newton step on lambda with a
/// singular-vector update of u. Never returns a larger residual.
EigenPair refine_pair(const LaurentPoly& p, Complex lambda, const CVector& u);

/// U = [u_1 ... u_m], Lambda = diag(lambda_i), V = U (U^* U)^{-1}.
/// Selected eigenvalues must be finite and pairwise distinct.
InvariantPair invariant_pair(const LaurentPoly& p, std::span<const EigenPair> selected);

/// Unit 2-norm vector with first significant entry real and positive.
CVector normalize_phase(const CVector& x);

/// Smallest right singular vector of m.
CVector null_vector(const CMatrix& m);
/// Smallest left singular vector of m (v^* m ~ 0).
CVector left_null_vector(const CMatrix& m);

/// Eigenvalues of a square matrix.
CVector eigenvalues(const CMatrix& m);
double spectral_radius(const CMatrix& m);

/// sigma_min / sigma_max.
double reciprocal_condition(const CMatrix& m);

}  // namespace mpshift
