// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpshift/types.hpp"

namespace mpshift {

/// Absolute floor used in relative error denominators.
inline constexpr double kTinyFloor = 1e-300;

double frobenius(const CMatrix& m);

/// z^k for integer k, by repeated squaring (exact for k = 0).
Complex ipow(Complex z, int k);

/// sum_i z^i A_i by Horner's rule.
CMatrix evaluate(const MatrixPoly& p, Complex z);
/// z^lo * (Horner over ascending powers). Throws ZeroAtNegativePower.
CMatrix evaluate(const LaurentPoly& p, Complex z);

/// A'(z) = sum_i i z^{i-1} A_i.
CMatrix derivative(const LaurentPoly& p, Complex z);

/// Determinant of A(z) through partial-pivoting LU.
Complex det_at(const LaurentPoly& p, Complex z);

MatrixPoly reverse(const MatrixPoly& p);

/// Entrywise conjugate transpose of every coefficient: sum_i z^i A_i^*.
LaurentPoly adjoint_coeffs(const LaurentPoly& p);

/// z^{-lo} A(z), a polynomial with the same nonzero eigenvalues.
MatrixPoly as_polynomial(const LaurentPoly& p);

/// sum_i ||A_i||_F.
double coeff_scale(const LaurentPoly& p);
/// sum_i ||A_i||_F |z|^i, the natural size of A(z).
double eval_scale(const LaurentPoly& p, Complex z);

/// ||A(z) u|| / (||u|| eval_scale(A, z)).
double right_residual(const LaurentPoly& p, Complex z, const CVector& u);
/// ||v^* A(z)|| / (||v|| eval_scale(A, z)).
double left_residual(const LaurentPoly& p, Complex z, const CVector& v);

struct OracleOptions {
  int samples = 32;
  std::uint64_t seed = 42;
  std::vector<double> radii{0.7, 1.3};
  double tolerance = 1e-8;
  double floor = kTinyFloor;
  /// Sample points closer than this to a removed/added value are redrawn.
  double exclusion = 1e-3;
  /// Expected constant c in det(shifted) prod(z - removed) = c det(a) prod(z - added).
  Complex constant{1.0, 0.0};
  /// Fit c at the first sample and verify it at the remaining ones.
  bool fit_constant = false;
};

struct OracleReport {
  double max_error = 0.0;
  int samples = 0;
  Complex constant{1.0, 0.0};
  bool pass = false;
};

/// Checks det(shifted(z)) prod_j (z - removed_j) == c det(a(z)) prod_j (z - added_j)
/// at random points on circles, using LU determinants only.
OracleReport det_ratio_oracle(const LaurentPoly& a, const LaurentPoly& shifted,
                              std::span<const Complex> removed,
                              std::span<const Complex> added,
                              const OracleOptions& options = {});

/// Equally spaced points e^{2 pi i k / count}.
std::vector<Complex> unit_circle_points(int count = 8);

}  // namespace mpshift
