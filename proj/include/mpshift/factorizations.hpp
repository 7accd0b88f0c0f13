// SPDX-License-Identifier: Apache-2.0
//
// Canonical factorizations A(z) = U(z) L(z^{-1}) with U, L nonsingular on the
// closed unit disk. For A(z) = z^{-1} A_{-1} + A_0 + z A_1 this reads
//   A(z) = (I - z R+) K+ (I - z^{-1} G+),   rho(G+), rho(R+) < 1.

#pragma once

#include <utility>
#include <vector>

#include "mpshift/core.hpp"
#include "mpshift/shifts.hpp"

namespace mpshift {

/// Coefficients of z^{-1}, z^0, z^1.
struct QuadCoeffs {
  CMatrix am1;
  CMatrix a0;
  CMatrix a1;

  static QuadCoeffs from(const LaurentPoly& p);
  LaurentPoly to_laurent() const;
};

struct QuadFactorization {
  CMatrix Gplus;
  CMatrix Rplus;
  CMatrix Kplus;
  int iterations = 0;
  /// Largest relative factorization residual at the unit-circle sample points.
  double residual = 0.0;
};

/// A(z^{-1}) = (I - z R-) K- (I - z^{-1} G-), W = H_0.
struct ReversedFactorization {
  CMatrix Gminus;
  CMatrix Rminus;
  CMatrix Kminus;
  CMatrix W;
  double residual = 0.0;
  /// Reciprocal 2-norm condition number of W.
  double rcond = 0.0;
};

/// Raw state of cyclic reduction on B_{-1} + B_0 X + B_1 X^2 = 0.
struct CyclicReduction {
  CMatrix hhat;    // tends to K+: G = -hhat^{-1} B_{-1}, R = -B_1 hhat^{-1}
  CMatrix hcheck;  // same limit for the reversed coefficients
  int iterations = 0;
};

/// Iterates until min(||B_{-1}^{(k)}||_inf, ||B_1^{(k)}||_inf) <= tol * sum ||B_i||_inf.
/// Throws SingularPivot or NoConvergence.
CyclicReduction cyclic_reduction(const QuadCoeffs& q, double tol = 1e-14, int maxit = 64);

/// Cyclic reduction plus validation: both spectral radii below one and the
/// factorization reproduced on the unit circle.
QuadFactorization cr_quadratic(const QuadCoeffs& q, double tol = 1e-14, int maxit = 64);

/// H_0 = sum_j G+^j K+^{-1} R+^j.
CMatrix h0_series(const QuadFactorization& f);

/// Coefficients H_{-m}..H_m of A(z)^{-1}.
LaurentPoly inverse_coefficients(const QuadFactorization& f, int m);

ReversedFactorization reversed_factorization(const QuadCoeffs& q, const QuadFactorization& f);

/// max_k ||A(z_k) - (I - z_k R) K (I - z_k^{-1} G)||_F / sum ||A_i||_F over the
/// eight points z_k = e^{2 pi i k / 8}; `reversed` uses A(z^{-1}) instead.
double quad_factor_residual(const QuadCoeffs& q, const CMatrix& R, const CMatrix& K,
                            const CMatrix& G, bool reversed = false);

/// General factorization A(z) = U(z) L(z^{-1}) with U(z) = sum z^i U_i and
/// L(w) = sum w^i L_i.
struct CanonicalFactors {
  MatrixPoly U;
  MatrixPoly L;

  static CanonicalFactors from(const QuadFactorization& f);
  /// U(z) L(z^{-1}) as a Laurent polynomial.
  LaurentPoly product() const;
};

/// Right shift inside the unit disk acts on L only:
/// L~_i = L_i - (lambda - mu) sum_{j>=1} lambda^{-j} L_{j+i-1} Q.
CanonicalFactors shifted_factorization_right(const CanonicalFactors& f, const RightShift& s);

/// Factorizations of A~(z) and A~(z^{-1}) for a quadratic Laurent polynomial
/// after a right shift with |lambda|, |mu| < 1.
std::pair<QuadFactorization, ReversedFactorization> shifted_factorization_both(
    const QuadCoeffs& q, const QuadFactorization& f, const ReversedFactorization& rf,
    const RightShift& s);

/// Right shift (inside the disk) on L and left shift (outside) on U.
CanonicalFactors double_shift_factorization(const CanonicalFactors& f, const RightShift& right,
                                            const LeftShift& left);

struct PolyFactorization {
  CMatrix G;
  /// U_0..U_{d-1} with A(z) = U(z)(zI - G).
  std::vector<CMatrix> U;
  /// ||A_0 + U_0 G||_F relative to the coefficient scale.
  double consistency = 0.0;
};

PolyFactorization poly_factorization(const MatrixPoly& p, const CMatrix& G);

}  // namespace mpshift
