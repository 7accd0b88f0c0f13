// SPDX-License-Identifier: Apache-2.0
//
// Brauer-type eigenvalue shifts. A right shift moves the eigenvalue lambda of
// A(z) with A(lambda) u = 0 to mu by
//   A~(z) = A(z) (I + (lambda - mu) / (z - lambda) u v^*),   v^* u = 1,
// and a left shift does the same from the left with v^* A(lambda) = 0 and a
// dual vector y, v^* y = 1. Every other eigenvalue is kept.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpshift/core.hpp"

namespace mpshift {

/// Right eigenpair (lambda, u) to move to mu. When v is omitted the default
/// dual u / (u^* u) is used; otherwise v is rescaled so that v^* u = 1.
struct RightShift {
  Complex lambda;
  Complex mu;
  CVector u;
  std::optional<CVector> v;
};

/// Left eigenpair (lambda, v) to move to mu; y defaults to v / (v^* v) and
/// is rescaled so that v^* y = 1.
struct LeftShift {
  Complex lambda;
  Complex mu;
  CVector v;
  std::optional<CVector> y;
};

/// Packet (U, Lambda) with sum_i A_i U Lambda^i = 0 to be replaced by the
/// eigenvalues of S. V must satisfy V^* U = I.
struct MultiShift {
  CMatrix U;
  CMatrix Lambda;
  CMatrix S;
  CMatrix V;
};

/// det(shifted(z)) prod (z - removed) = constant * det(A(z)) prod (z - added).
struct DetRatio {
  std::vector<Complex> removed;
  std::vector<Complex> added;
  Complex constant{1.0, 0.0};
};

/// Dual vector scaled so that dual^* u = 1 (default u / (u^* u)).
CVector normalized_dual(const CVector& u, const std::optional<CVector>& dual);

CMatrix right_shift_pencil(const CMatrix& a, const RightShift& s);
MatrixPoly right_shift_poly(const MatrixPoly& p, const RightShift& s);
MatrixPoly left_shift_poly(const MatrixPoly& p, const LeftShift& s);
LaurentPoly right_shift_laurent(const LaurentPoly& p, const RightShift& s);
LaurentPoly left_shift_laurent(const LaurentPoly& p, const LeftShift& s);

enum class ShiftOrder { RightFirst, LeftFirst };

/// Right shift (lambda1 -> mu1) composed with a left shift (lambda2 -> mu2).
/// lambda1 and lambda2 must differ.
LaurentPoly double_shift_laurent(const LaurentPoly& p, const RightShift& right,
                                 const LeftShift& left,
                                 ShiftOrder order = ShiftOrder::RightFirst);

CMatrix multishift_pencil(const CMatrix& a, const MultiShift& s);
MatrixPoly multishift_poly(const MatrixPoly& p, const MultiShift& s);
LaurentPoly multishift_laurent(const LaurentPoly& p, const MultiShift& s);

/// Replaces one infinite eigenvalue (A_d u = 0) by mu != 0:
/// A~_0 = A_0, A~_i = A_i - mu^{-1} A_{i-1} u v^*.
MatrixPoly shift_from_infinity(const MatrixPoly& p, Complex mu, const CVector& u,
                               const std::optional<CVector>& v = std::nullopt);

/// Sends the eigenvalue lambda != 0 (A(lambda) u = 0) to infinity:
/// A~_0 = A_0, A~_i = A_i + sum_{k=0}^{i-1} lambda^{-k-1} A_{i-k-1} u v^*.
MatrixPoly shift_to_infinity(const MatrixPoly& p, Complex lambda, const CVector& u,
                             const std::optional<CVector>& v = std::nullopt);

struct PalindromicShift {
  MatrixPoly poly;
  /// max_i ||A~_i - A~_{d-i}^*||_F before re-symmetrization.
  double deviation = 0.0;
  std::vector<std::string> warnings;
};

/// Moves the pair (lambda, 1/conj(lambda)) of a *-palindromic polynomial
/// (A_i = A_{d-i}^*) to (mu, 1/conj(mu)), keeping the structure.
PalindromicShift palindromic_shift(const MatrixPoly& p, Complex lambda, Complex mu,
                                   const CVector& u);

/// Right shift that also accepts lambda = infinity (shift_from_infinity) or
/// mu = infinity (shift_to_infinity). Both infinite is rejected.
MatrixPoly shift_poly(const MatrixPoly& p, ExtComplex lambda, ExtComplex mu, const CVector& u,
                      const std::optional<CVector>& v = std::nullopt);

/// Expected determinant relations for the oracle.
DetRatio single_shift_ratio(Complex lambda, Complex mu);
DetRatio from_infinity_ratio(Complex mu);
DetRatio to_infinity_ratio(Complex lambda);
DetRatio palindromic_ratio(Complex lambda, Complex mu);
DetRatio multishift_ratio(const MultiShift& s);

/// ||sum_i A_i U Lambda^i||_F.
CMatrix invariance_residual(const LaurentPoly& p, const CMatrix& U, const CMatrix& Lambda);

}  // namespace mpshift
