// SPDX-License-Identifier: Apache-2.0
//
// Basic value types shared by every mpshift module: complex dense matrices,
// matrix polynomials, matrix Laurent polynomials and eigenpairs.

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mpshift {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class Errc {
  InvalidArgument,
  DimensionMismatch,
  ParseError,
  ZeroAtNegativePower,
  DegeneratePolynomial,
  EigensolverFailure,
  DependentEigenvectors,
  DistinctnessViolated,
  NotInvariant,
  NotAnEigenpair,
  ZeroLambdaWithNegativePowers,
  CoincidentEigenvalues,
  SingularLambda,
  NotInKernel,
  ZeroMu,
  ZeroLambda,
  NotPalindromic,
  SymmetryLoss,
  InfiniteValue,
  MixedInfinity,
  SingularPivot,
  NoConvergence,
  NotCanonical,
  SingularH0,
  ShiftOutsideDisk,
  DegenerateShift,
  SingularWtilde,
  ModulusConstraintViolated,
  NotASolvent,
  SplittingFailure,
  IllConditionedEigenbasis,
  NoSplitting,
  ResidualCheckFailed,
  UnknownFixture,
};

const char* to_string(Errc code) noexcept;

/// Exception type thrown by every mpshift operation.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// A complex number or the point at infinity.
class ExtComplex {
 public:
  ExtComplex() = default;
  ExtComplex(Complex z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  ExtComplex(double x) : z_(x, 0.0) {}  // NOLINT(google-explicit-constructor)

  static ExtComplex infinity() {
    ExtComplex e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  /// Finite value; throws InfiniteValue for the point at infinity.
  Complex value() const;

  /// Modulus, +inf for the point at infinity.
  double abs() const noexcept;

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.z_ == b.z_);
  }

 private:
  Complex z_{0.0, 0.0};
  bool infinite_ = false;
};

/// A(z) = sum_{i=0}^{d} z^i A_i with square n x n coefficients.
class MatrixPoly {
 public:
  explicit MatrixPoly(std::vector<CMatrix> coeffs);

  Index dim() const noexcept { return n_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const CMatrix& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  const std::vector<CMatrix>& coeffs() const noexcept { return coeffs_; }
  const CMatrix& leading() const noexcept { return coeffs_.back(); }

  friend bool operator==(const MatrixPoly& a, const MatrixPoly& b);

 private:
  Index n_ = 0;
  std::vector<CMatrix> coeffs_;
};

/// A(z) = sum_{i=lo}^{hi} z^i A_i with lo <= 0 <= hi. Also stores truncated
/// Laurent series; `truncated()` records that the stored range is a cut of
/// an infinite series.
class LaurentPoly {
 public:
  LaurentPoly(int lo, std::vector<CMatrix> coeffs, bool truncated = false);
  LaurentPoly(const MatrixPoly& p);  // NOLINT(google-explicit-constructor)

  Index dim() const noexcept { return n_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  bool truncated() const noexcept { return truncated_; }
  bool is_polynomial() const noexcept { return lo_ == 0; }

  /// Coefficient of z^i, lo <= i <= hi.
  const CMatrix& operator[](int i) const;
  const std::vector<CMatrix>& coeffs() const noexcept { return coeffs_; }

  /// Requires lo == 0.
  MatrixPoly to_poly() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

 private:
  Index n_ = 0;
  int lo_ = 0;
  std::vector<CMatrix> coeffs_;
  bool truncated_ = false;
};

/// Eigenvalue (possibly infinite) with unit right vector, optional left
/// vector and relative residual.
struct EigenPair {
  ExtComplex value;
  CVector right;
  std::optional<CVector> left;
  double residual = 0.0;
  /// Set when the infinity classification was close to its threshold.
  bool borderline = false;
};

/// (U, Lambda) with sum_i A_i U Lambda^i = 0, plus V = U (U^* U)^{-1}.
struct InvariantPair {
  CMatrix U;
  CMatrix Lambda;
  CMatrix V;
  double residual = 0.0;
};

}  // namespace mpshift
